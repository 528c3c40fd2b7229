#pragma once

// JSON and CSV surfaces.
//   Pmf:    {"offset": <int>, "probs": [<float>, ...]}
//   Curves: header "t,value,d2value", 17 significant digits per field.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "renyilab/core.hpp"
#include "renyilab/probe.hpp"
#include "renyilab/report.hpp"

namespace renyilab::io {

using nlohmann::json;

/// "@path" reads the file; anything else is returned verbatim.
inline std::string read_source(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw InputError("cannot open '" + arg.substr(1) + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Pmf pmf_from_json(const json& j) {
  if (!j.is_object() || !j.contains("probs")) {
    throw InputError("pmf JSON must be an object with a \"probs\" array");
  }
  std::int64_t offset = 0;
  if (j.contains("offset")) {
    if (!j["offset"].is_number_integer()) {
      throw InputError("pmf \"offset\" must be an integer");
    }
    offset = j["offset"].get<std::int64_t>();
  }
  const json& probs = j["probs"];
  if (!probs.is_array()) throw InputError("pmf \"probs\" must be an array");
  std::vector<double> w;
  w.reserve(probs.size());
  for (const json& x : probs) {
    if (!x.is_number()) throw InputError("pmf weights must be numbers");
    w.push_back(x.get<double>());
  }
  return Pmf(offset, std::move(w));
}

inline Pmf parse_pmf(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed pmf JSON: ") + e.what());
  }
  return pmf_from_json(j);
}

inline json to_json(const Pmf& f) {
  return json{{"offset", f.offset()},
              {"probs", std::vector<double>(f.probs().begin(), f.probs().end())}};
}

/// A JSON array of positive numbers, or a comma-separated list.
inline std::vector<double> parse_sequence(const std::string& text) {
  std::vector<double> out;
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed sequence JSON: ") + e.what());
    }
    for (const json& x : j) {
      if (!x.is_number()) throw InputError("sequence entries must be numbers");
      out.push_back(x.get<double>());
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
          throw std::invalid_argument(item);
        }
      } catch (const std::logic_error&) {
        throw InputError("invalid number '" + item + "' in sequence");
      }
    }
  }
  if (out.empty()) throw InputError("empty sequence");
  return out;
}

inline std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_curve_csv(std::ostream& os,
                            const std::vector<CurvePoint>& curve) {
  os << "t,value,d2value\n";
  for (const auto& c : curve) {
    os << format17(c.t) << ',' << format17(c.value) << ','
       << format17(c.d2value) << '\n';
  }
}

inline json to_json(const BoundReport& r, double unit = 1.0) {
  return json{{"lhs", r.lhs / unit},
              {"rhs", r.rhs / unit},
              {"margin", r.margin / unit},
              {"holds", r.holds},
              {"strict", r.strict()},
              {"witness", r.witness}};
}

inline json to_json(const ProbeResult& r) {
  json w{{"sequence", r.witness.sequence}};
  if (r.kind == ProbeKind::ComplexModulus) {
    w["z"] = {r.witness.point.real(), r.witness.point.imag()};
  } else {
    w["t"] = r.witness.point.real();
  }
  if (r.kind == ProbeKind::KLogConcavity || r.kind == ProbeKind::ComplexModulus) {
    w["gamma"] = r.witness.gamma;
  }
  if (r.kind == ProbeKind::Varentropy) w["trial_seed"] = r.witness.seed;
  return json{{"kind", std::string(to_string(r.kind))},
              {"worst_value", r.worst_value},
              {"threshold", conjectured_threshold(r.kind)},
              {"violated", r.violated},
              {"evaluations", r.evaluations},
              {"witness", w}};
}

}  // namespace renyilab::io
