#pragma once

// Weighted exponential-kernel quadrature.  All integrals share the shape
//
//     I(t) = integral_{r_lo}^{t} xi^{w} exp(-k (B(t) - B(xi))) g(xi) dxi
//
// and are evaluated by composite trapezoid through the recurrence
//
//     I_{j+1} = exp(-k (B_{j+1} - B_j)) * I_j + panel_{j,j+1},
//
// which carries the exponential incrementally.  Only differences of the
// cumulative drift B enter, so k * B may be arbitrarily large without
// overflow; this is the only permitted evaluation path.

#include <memory>
#include <string>

#include "radcomp/constants.hpp"
#include "radcomp/problem.hpp"

namespace radcomp {

struct KernelAccumulator {
  std::shared_ptr<const RadialGrid> grid;
  Array inner;               // I_j, I_0 = 0
  std::string source_label;  // what g was
};

// Inner accumulator with weight xi^{1+a} and source g sampled on the grid.
// g must be non-negative.
KernelAccumulator inner_integral(const Trace& g, const ProblemParams& params);

// K_j = (alpha I_j / r_j^{1+a})^{1/(p-1)}.  At r = R0 = 0 the singular
// quotient is replaced by its limit 0 (I(t) = O(t^{2+a})).
Trace kernel(const KernelAccumulator& acc, double alpha, const ProblemParams& params);

// r |-> integral_{R0}^{r} K(t) dt with g(xi) = f(xi, beta M(xi)); the
// right-hand side of the comparison estimate.  Non-decreasing, starts at 0.
Trace lower_bound_integral(const Trace& M, const NonlinearityF& f,
                           const ProblemParams& params, const ComparisonConstants& consts);

// --- building blocks shared with the growth-estimate evaluators ---

// I_j for j >= j_begin with lower limit r_{j_begin} and weight xi^{w};
// entries below j_begin are zero.
Array weighted_inner_from(const RadialGrid& grid, const Array& gvals, double weight_exp,
                          double k, Index j_begin);

// Single window integral over [r_{j_lo}, r_{j_hi}] with the exponential
// anchored at node j_anchor >= j_hi:
//     integral xi^{w} exp(-k (B_anchor - B(xi))) g(xi) dxi.
double kernel_window_integral(const RadialGrid& grid, const Array& gvals, double weight_exp,
                              double k, Index j_lo, Index j_hi, Index j_anchor);

// Cumulative trapezoid of vals starting at node j_begin (zero before).
// When integration starts at the origin with a zero first value, the first
// panel uses the known leading power t^{origin_power} of the integrand;
// origin_power = 1 reproduces the plain trapezoid.
Array cumulative_trapezoid_from(const RadialGrid& grid, const Array& vals, Index j_begin,
                                double origin_power = 1.0);

// g_j = f(r_j, beta * M_j) sampled on M's grid.
Array source_samples(const Trace& M, const NonlinearityF& f, double beta);

}  // namespace radcomp
