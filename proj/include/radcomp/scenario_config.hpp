#pragma once

// Plain-text scenario configuration: line-oriented key = value pairs under
// bracketed sections [params], [f], [b], [grid].  Blank lines and lines
// starting with '#' are ignored.  Unknown sections or keys raise
// config_error carrying the offending 1-based line number.
//
//   [params]  p, a, k, sigma, n, R0, Rmax, blowup_cap
//   [f]       kind = power | constant | table:<path>; coefficients = c[,q]
//   [b]       kind = power | constant | table:<path>; coefficients = c[,q]
//   [grid]    n = <node count>
//
// Tables are CSV files with a header row: for f the first column is r and
// each further column header is a level value; for b the columns are r,b.

#include <string>

#include "radcomp/problem.hpp"

namespace radcomp {

struct ScenarioConfig {
  ProblemParams params;
  NonlinearityF f = NonlinearityF::zero();
  DriftB b = DriftB::zero();
  Index grid_nodes = 1025;
};

ScenarioConfig parse_scenario_file(const std::string& path);

// Exposed for tests: parse from an already-loaded string.
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& dir = ".");

}  // namespace radcomp
