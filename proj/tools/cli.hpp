#pragma once

// renyilab command-line front end. Exit codes: 0 success, 1 a check failed
// or a counterexample was found, 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "renyilab/io.hpp"
#include "renyilab/renyilab.hpp"

namespace renyilab::cli {

using nlohmann::json;

enum class Format { Table, Json, Csv };

inline constexpr int kOk = 0;
inline constexpr int kFinding = 1;
inline constexpr int kUsage = 2;

struct Options {
  std::string pmf;
  std::optional<double> geometric;
  std::string tsg;
  std::vector<std::string> orders;
  bool bits = false;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1000;
  std::size_t max_len = 30;
  std::string format = "table";
  std::optional<double> tol;
  std::string thetas;
  std::string sequence;
  double gamma = 1.0;
  std::vector<std::string> positional;
  std::string target;  // check/scan/probe sub-target
};

namespace detail {

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw InputError("unknown format '" + s + "'");
}

inline std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("RENYILAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InputError("RENYILAB_SEED must be a non-negative integer");
  }
  return 1;
}

inline std::vector<Order> resolve_orders(const Options& o,
                                         const char* fallback) {
  std::vector<Order> out;
  for (const auto& s : o.orders) out.push_back(Order::parse(s));
  if (out.empty()) out.push_back(Order::parse(fallback));
  return out;
}

inline TwoSidedGeo parse_tsg(const std::string& text) {
  const auto v = io::parse_sequence(text);
  if (v.size() != 3) throw InputError("--tsg expects p,q,m");
  const auto m = static_cast<std::int64_t>(v[2]);
  if (static_cast<double>(m) != v[2]) throw InputError("--tsg mode must be an integer");
  return TwoSidedGeo(v[0], v[1], m);
}

inline double tail_tol(const Options& o) { return o.tol.value_or(1e-15); }

/// A finite pmf from --pmf, or from --geometric by truncation.
inline Pmf finite_pmf(const Options& o) {
  if (!o.pmf.empty()) return io::parse_pmf(io::read_source(o.pmf));
  if (o.geometric) return Geometric(*o.geometric).truncate(tail_tol(o)).pmf;
  throw InputError("this command needs --pmf or --geometric");
}

inline std::string fixed6(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

inline const char* verdict(bool holds) { return holds ? "PASS" : "FAIL"; }

struct Emitter {
  std::ostream& out;
  Format format;
  double unit;  // 1 for nats, ln 2 for bits
  const char* unit_name;
};

inline void print_report_row(const Emitter& e, const std::string& label,
                             const BoundReport& r) {
  e.out << label << ": lhs " << fixed6(r.lhs / e.unit) << "  rhs "
        << fixed6(r.rhs / e.unit) << "  margin " << fixed6(r.margin / e.unit)
        << ' ' << e.unit_name << "  " << verdict(r.holds) << '\n';
}

// -- subcommands ------------------------------------------------------------

inline int cmd_entropy(const Options& o, const Emitter& e) {
  const auto orders = resolve_orders(o, "1");
  json rows = json::array();
  std::optional<Pmf> pmf;
  std::optional<TwoSidedGeo> tsg;
  if (!o.pmf.empty()) {
    pmf = io::parse_pmf(io::read_source(o.pmf));
  } else if (o.geometric) {
    const Geometric z(*o.geometric);
    tsg = TwoSidedGeo(z.ratio(), 0.0, 0);
  } else if (!o.tsg.empty()) {
    tsg = parse_tsg(o.tsg);
  } else {
    throw InputError("entropy needs --pmf, --geometric or --tsg");
  }
  for (const Order& a : orders) {
    const EntropyValue v = pmf ? renyi(*pmf, a) : renyi_two_sided_geo(*tsg, a);
    if (e.format == Format::Table) {
      e.out << "H_" << a.to_string() << " = " << fixed6(v.value / e.unit) << ' '
            << e.unit_name << " (" << to_string(v.method) << ")\n";
    } else if (e.format == Format::Csv) {
      if (rows.empty()) e.out << "order,value,method\n";
      e.out << a.to_string() << ',' << io::format17(v.value / e.unit) << ','
            << to_string(v.method) << '\n';
    }
    rows.push_back({{"order", a.to_string()},
                    {"value", v.value / e.unit},
                    {"unit", e.unit_name},
                    {"method", std::string(to_string(v.method))}});
  }
  if (e.format == Format::Json) {
    json doc{{"entropies", rows}};
    if (pmf) doc["pmf"] = io::to_json(*pmf);
    e.out << doc.dump(2) << '\n';
  }
  return kOk;
}

inline int emit_reports(const Emitter& e,
                        const std::vector<std::pair<std::string, BoundReport>>& rs,
                        json extra = json::object()) {
  bool all = true;
  json arr = json::array();
  if (e.format == Format::Csv) e.out << "label,lhs,rhs,margin,holds\n";
  for (const auto& [label, r] : rs) {
    all = all && r.holds;
    if (e.format == Format::Table) {
      print_report_row(e, label, r);
    } else if (e.format == Format::Csv) {
      e.out << label << ',' << io::format17(r.lhs / e.unit) << ','
            << io::format17(r.rhs / e.unit) << ','
            << io::format17(r.margin / e.unit) << ',' << (r.holds ? 1 : 0)
            << '\n';
    }
    json j = io::to_json(r, e.unit);
    j["label"] = label;
    arr.push_back(j);
  }
  if (e.format == Format::Json) {
    extra["reports"] = arr;
    extra["unit"] = e.unit_name;
    extra["all_hold"] = all;
    e.out << extra.dump(2) << '\n';
  }
  return all ? kOk : kFinding;
}

inline int cmd_check(const Options& o, const Emitter& e) {
  const double rel_tol = o.tol.value_or(kLogConcaveTolerance);
  if (o.target == "logconcave" || o.target == "monotone") {
    const Pmf f = finite_pmf(o);
    const bool ok = o.target == "logconcave" ? is_log_concave(f, rel_tol)
                                             : is_monotone(f);
    if (e.format == Format::Json) {
      e.out << json{{o.target, ok}}.dump(2) << '\n';
    } else {
      e.out << o.target << ": " << (ok ? "true" : "false") << '\n';
    }
    return ok ? kOk : kFinding;
  }
  std::vector<std::pair<std::string, BoundReport>> rs;
  const auto orders = resolve_orders(o, "1");
  if (o.target == "main") {
    const Pmf f = finite_pmf(o);
    for (const Order& a : orders) {
      rs.emplace_back("H_" + a.to_string() + " - H_inf < log c",
                      check_main_theorem(f, a));
    }
  } else if (o.target == "lemma") {
    const TwoSidedGeo g = !o.tsg.empty() ? parse_tsg(o.tsg)
                          : o.geometric
                              ? TwoSidedGeo(1.0 - *o.geometric, 0.0, 0)
                              : throw InputError("check lemma needs --tsg");
    for (const Order& a : orders) {
      rs.emplace_back("tsg H_" + a.to_string() + " - H_inf < log c",
                      check_tsg_lemma(g, a));
    }
  } else {
    throw InputError("check expects logconcave|monotone|main|lemma");
  }
  return emit_reports(e, rs);
}

inline int cmd_extremal(const Options& o, const Emitter& e) {
  const Pmf f = finite_pmf(o);
  ExtremalDiagnostics diag;
  const TwoSidedGeo g = extremal_tsg(f, &diag);
  const MajorizationReport m = majorizes_tsg(f, g);
  const double h_inf = renyi_two_sided_geo(g, Order::infinity()).value;
  if (e.format == Format::Json) {
    e.out << json{{"p", g.p()},
                  {"q", g.q()},
                  {"m", g.mode()},
                  {"peak", g.peak()},
                  {"total_mass", g.total_mass()},
                  {"h_inf", h_inf / e.unit},
                  {"unit", e.unit_name},
                  {"majorized", m.holds},
                  {"min_margin", m.min_margin}}
                 .dump(2)
          << '\n';
  } else {
    e.out << "tsg p=" << io::format17(g.p()) << " q=" << io::format17(g.q())
          << " m=" << g.mode() << " peak=" << io::format17(g.peak()) << '\n'
          << "total mass " << io::format17(g.total_mass()) << ", H_inf "
          << fixed6(h_inf / e.unit) << ' ' << e.unit_name << '\n'
          << "f majorizes tsg: " << (m.holds ? "true" : "false")
          << " (min margin " << io::format17(m.min_margin) << ")\n";
  }
  return m.holds ? kOk : kFinding;
}

inline int cmd_majorize(const Options& o, const Emitter& e) {
  if (o.positional.empty()) throw InputError("majorize needs pmf A");
  const Pmf a = io::parse_pmf(io::read_source(o.positional[0]));
  MajorizationReport m;
  if (o.positional.size() >= 2) {
    m = majorizes(a, io::parse_pmf(io::read_source(o.positional[1])));
  } else if (!o.tsg.empty()) {
    m = majorizes_tsg(a, parse_tsg(o.tsg));
  } else {
    throw InputError("majorize needs pmf B or --tsg");
  }
  if (e.format == Format::Json) {
    json j{{"holds", m.holds},
           {"min_margin", m.min_margin},
           {"total_mass_gap", m.total_mass_gap}};
    j["first_violation_index"] =
        m.first_violation_index ? json(*m.first_violation_index) : json(nullptr);
    e.out << j.dump(2) << '\n';
  } else {
    e.out << "A majorizes B: " << (m.holds ? "true" : "false") << '\n'
          << "min margin " << io::format17(m.min_margin) << ", mass gap "
          << io::format17(m.total_mass_gap) << '\n';
    if (m.first_violation_index) {
      e.out << "first violation at k=" << *m.first_violation_index << '\n';
    }
  }
  return m.holds ? kOk : kFinding;
}

inline int cmd_rs(const Options& o, const Emitter& e) {
  std::vector<std::pair<std::string, BoundReport>> rs;
  for (const Order& a : resolve_orders(o, "2")) {
    const std::string label = "H_" + a.to_string() + "(X-Y) - H_" +
                              a.to_string() + "(X) < log c_rs";
    if (a.is_zero()) {
      rs.emplace_back("H_0(X-Y) <= H_0(X) + log 2", check_h0_rs(finite_pmf(o)));
      continue;
    }
    if (o.geometric && o.pmf.empty()) {
      const double theta = *o.geometric;
      const double len = theta < 1.0 ? std::log(tail_tol(o)) / std::log1p(-theta)
                                     : 1.0;
      if (len > static_cast<double>(kDirectDifferenceCap)) {
        rs.emplace_back(label + " (closed form)",
                        BoundReport::less_than(geometric_rs_gap(theta, a),
                                               log_rs_constant(a),
                                               "theta=" + io::format17(theta)));
        continue;
      }
    }
    rs.emplace_back(label, check_discrete_rs(finite_pmf(o), a));
  }
  return emit_reports(e, rs);
}

inline std::vector<double> resolve_thetas(const Options& o) {
  if (o.thetas.empty()) return {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5};
  return io::parse_sequence(o.thetas);
}

inline int cmd_scan(const Options& o, const Emitter& e) {
  const auto thetas = resolve_thetas(o);
  std::vector<std::pair<std::string, BoundReport>> rs;
  json extra = json::object();
  for (const Order& a : resolve_orders(o, "2")) {
    if (o.target == "sharpness") {
      const auto reports = sharpness_scan(a, thetas);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        rs.emplace_back("order " + a.to_string() + " theta " +
                            io::format17(thetas[i]),
                        reports[i]);
      }
      extra["monotone_approach_" + a.to_string()] =
          margins_shrink_with_theta(thetas, reports);
    } else if (o.target == "rslimit") {
      for (const auto& pt : rs_limit_scan(a, thetas)) {
        BoundReport r = pt.report;
        r.holds = r.holds && pt.routes_agree;
        r.witness += pt.truncated_route ? ", truncated route" : ", tsg route";
        rs.emplace_back("order " + a.to_string() + " theta " +
                            io::format17(pt.theta),
                        r);
      }
    } else {
      throw InputError("scan expects sharpness|rslimit");
    }
  }
  return emit_reports(e, rs, extra);
}

inline int emit_probe(const Emitter& e, const ProbeResult& r,
                      const std::vector<CurvePoint>& curve) {
  if (e.format == Format::Json) {
    e.out << io::to_json(r).dump(2) << '\n';
  } else if (e.format == Format::Csv) {
    io::write_curve_csv(e.out, curve);
  } else {
    e.out << to_string(r.kind) << ": worst value " << io::format17(r.worst_value)
          << " (conjectured <= " << conjectured_threshold(r.kind) << ")\n";
    e.out << "witness sequence:";
    for (double v : r.witness.sequence) e.out << ' ' << io::format17(v);
    e.out << '\n';
    if (r.kind == ProbeKind::ComplexModulus) {
      e.out << "at z = " << io::format17(r.witness.point.real()) << " + "
            << io::format17(r.witness.point.imag()) << "i, gamma "
            << r.witness.gamma << '\n';
    } else {
      e.out << "at t = " << io::format17(r.witness.point.real()) << '\n';
    }
    e.out << (r.violated ? "FINDING: counterexample found\n"
                         : "no counterexample found\n");
  }
  return r.violated ? kFinding : kOk;
}

inline int cmd_probe(const Options& o, const Emitter& e) {
  if (o.target == "counterexample") {
    const ProbeResult r = nonmonotone_counterexample();
    return emit_probe(e, r, F_curve(r.witness.sequence, default_t_grid()));
  }
  if (o.target == "search") {
    const ProbeResult r =
        conjecture51_search(o.trials, o.max_len, resolve_seed(o));
    return emit_probe(e, r, F_curve(r.witness.sequence, default_t_grid()));
  }
  if (o.target == "kcheck") {
    if (o.sequence.empty()) throw InputError("probe kcheck needs --seq");
    const auto y = io::parse_sequence(io::read_source(o.sequence));
    const auto t_grid = default_K_t_grid(o.gamma);
    const ProbeResult real = K_logconcavity_check(y, o.gamma, t_grid);
    const ProbeResult cplx =
        complex_modulus_check(y, o.gamma, default_complex_grid(o.gamma));
    if (e.format == Format::Json) {
      e.out << json{{"real", io::to_json(real)}, {"complex", io::to_json(cplx)}}
                   .dump(2)
            << '\n';
    } else if (e.format == Format::Csv) {
      io::write_curve_csv(e.out, log_K_curve(y, o.gamma, t_grid));
    } else {
      Emitter table{e.out, Format::Table, e.unit, e.unit_name};
      emit_probe(table, real, {});
      emit_probe(table, cplx, {});
    }
    return (real.violated || cplx.violated) ? kFinding : kOk;
  }
  throw InputError("probe expects search|counterexample|kcheck");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Rényi entropy toolkit for log-concave integer distributions",
               "renyilab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--pmf", o.pmf, "pmf JSON {\"offset\":k,\"probs\":[...]} or @file");
  app.add_option("--geometric", o.geometric, "geometric law, success probability theta");
  app.add_option("--tsg", o.tsg, "two-sided geometric p,q,m");
  app.add_option("--order", o.orders, "Rényi order: 0, 1, inf or a positive decimal");
  app.add_flag("--bits", o.bits, "report entropies in bits");
  app.add_option("--seed", o.seed, "RNG seed (default $RENYILAB_SEED or 1)");
  app.add_option("--trials", o.trials, "search trials");
  app.add_option("--max-len", o.max_len, "longest sequence in searches");
  app.add_option("--format", o.format, "table|json|csv");
  app.add_option("--tol", o.tol,
                 "log-concavity relative tolerance (check) or geometric "
                 "truncation tail (other commands)");
  app.add_option("--thetas", o.thetas, "comma-separated theta grid for scans");
  app.add_option("--seq", o.sequence, "sequence for probe kcheck (JSON array, a,b,c or @file)");
  app.add_option("--gamma", o.gamma, "gamma for probe kcheck");

  auto* entropy = app.add_subcommand("entropy", "Rényi entropies of a distribution");
  auto* check = app.add_subcommand("check", "logconcave|monotone|main|lemma");
  check->add_option("what", o.target)->required();
  auto* extremal = app.add_subcommand("extremal", "extremal two-sided geometric minorant");
  auto* majorize = app.add_subcommand("majorize", "does pmf A majorize pmf B");
  majorize->add_option("pmfs", o.positional)->expected(1, 2);
  auto* rs = app.add_subcommand("rs", "discrete Rényi Rogers-Shephard check");
  auto* scan = app.add_subcommand("scan", "sharpness|rslimit scans over theta");
  scan->add_option("what", o.target)->required();
  auto* probe = app.add_subcommand("probe", "search|counterexample|kcheck");
  probe->add_option("what", o.target)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "renyilab: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const detail::Emitter emitter{
        out, detail::parse_format(o.format),
        o.bits ? std::numbers::ln2 : 1.0, o.bits ? "bits" : "nats"};
    if (*entropy) return detail::cmd_entropy(o, emitter);
    if (*check) return detail::cmd_check(o, emitter);
    if (*extremal) return detail::cmd_extremal(o, emitter);
    if (*majorize) return detail::cmd_majorize(o, emitter);
    if (*rs) return detail::cmd_rs(o, emitter);
    if (*scan) return detail::cmd_scan(o, emitter);
    if (*probe) return detail::cmd_probe(o, emitter);
  } catch (const InputError& e) {
    err << "renyilab: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "renyilab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::range_error& e) {
    err << "renyilab: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace renyilab::cli
