#pragma once

// Constructions that turn raw operator data into admissible (f, b) pairs
// and monotone envelopes: sampled validation of f, the running-maximum
// envelope, and the shell min/max construction over [r/sigma, sigma*r].

#include <utility>

#include "radcomp/problem.hpp"

namespace radcomp {

struct ValidationReport {
  bool pass = true;
  enum class Violation { none, negative_value, monotonicity } violation = Violation::none;
  double r = 0.0;   // radius of the first violation
  double t1 = 0.0;  // higher level of the violating pair (equal to t2 for sign failures)
  double t2 = 0.0;  // lower level
};

// Samples f over grid nodes x levels and checks non-negativity plus
// monotonicity in the level.  Levels must be strictly increasing and
// non-empty (otherwise invalid_input).
ValidationReport validate_nonlinearity(const NonlinearityF& f, const RadialGrid& grid,
                                       const Array& levels);

// Running maximum M_j = max_{i<=j} s_i, the least non-decreasing majorant
// of the per-sphere suprema.
Trace monotone_envelope(const Trace& sphere_sup);

// Shell construction: f(r,t) := min of coeff_c over grid nodes in
// [r/sigma, sigma*r] (clamped to [R0, Rmax]); b(r) := max of coeff_bsum
// over the same window.  Throws window_error when a window catches no node.
std::pair<NonlinearityF, DriftB> shell_envelope(const RadialField& coeff_c,
                                                const Array& coeff_bsum,
                                                const ProblemParams& params,
                                                const RadialGrid& grid);

// Node-index range [first, last] of the clamped shell window around r;
// throws window_error when empty.
std::pair<Index, Index> shell_window(const RadialGrid& grid, double r, double sigma);

}  // namespace radcomp
