#pragma once

// Successive approximation for the weighted Volterra fixed point
//
//     m(r) = M0 + integral_{R0}^{r} ( alpha / t^{1+a}
//              integral_{R0}^{t} xi^{1+a} e^{-k(B(t)-B(xi))} f(xi, beta m(xi)) dxi
//            )^{1/(p-1)} dt
//
// starting from m_0 = M0.  Because f is non-decreasing in its level and
// every kernel weight is non-negative, the iterates are pointwise
// non-decreasing in the iteration index; the solver asserts this each
// step and reports blow-up when an iterate exceeds the configured cap.

#include <memory>
#include <optional>

#include "radcomp/quadrature.hpp"

namespace radcomp {

struct PicardOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct BlowupInfo {
  Index first_offending_node = 0;
  double radius_estimate = 0.0;  // midpoint of the last capped panel
};

struct PicardResult {
  Trace m;
  int iterations = 0;
  bool converged = false;
  std::optional<BlowupInfo> blowup;
  double final_delta = 0.0;  // sup-norm of the last update
};

// One iteration: m_next(r) = M0 + bound integral with level m_prev.
// m_prev must be positive and non-decreasing; the output dominates it.
Trace picard_step(const Trace& m_prev, const NonlinearityF& f, const ProblemParams& params,
                  const ComparisonConstants& consts);

// Iterates picard_step from m_0 = M0 until
//   sup_j |m_i - m_{i-1}| <= tol * (1 + sup_j m_i),
// or a node exceeds params.blowup_cap (blow-up reported), or max_iter is
// reached (converged = false, not fatal).
PicardResult solve_comparison_function(const NonlinearityF& f, const ProblemParams& params,
                                       const ComparisonConstants& consts,
                                       std::shared_ptr<const RadialGrid> grid, double M0,
                                       const PicardOptions& options = {});

}  // namespace radcomp
