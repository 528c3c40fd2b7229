#pragma once

#include "renyilab/bounds.hpp"
#include "renyilab/core.hpp"
#include "renyilab/diffconv.hpp"
#include "renyilab/entropy.hpp"
#include "renyilab/majorize.hpp"
#include "renyilab/numeric.hpp"
#include "renyilab/probe.hpp"
#include "renyilab/report.hpp"
