#pragma once

// Checks that a computed comparison function solves the degenerate Cauchy
// problem.  Verification is flux-form first: the flux w = r^{1+a}|m'|^{p-2}m'
// is the smooth variable, and the exact solution of the integral equation
// makes   r^{1+a}(m')^{p-1} - alpha * I(r)   vanish identically.  A fixed
// step fourth-order integrator of the (m, w) system provides the second,
// quadrature-independent route.

#include <memory>

#include "radcomp/quadrature.hpp"

namespace radcomp {

// D_j = ( r_j^{1+a} (m'_j)^{p-1} - alpha I_j ) / max(1, alpha I_N)
// with m' by centered differences (one-sided second order at the ends)
// and I the inner accumulator with source f(., beta m(.)).
Trace flux_residual(const Trace& m, const NonlinearityF& f, const ProblemParams& params,
                    const ComparisonConstants& consts);

// Residual of the second-order reduction available when p = 2:
// R_j = m''_j + ((1+a)/r_j + k b(r_j)) m'_j - alpha f(r_j, beta m_j),
// interior nodes only (endpoints are reported as 0).  Throws invalid_input
// when p != 2.
Trace pointwise_residual_p2(const Trace& m, const NonlinearityF& f, const DriftB& b,
                            const ProblemParams& params, const ComparisonConstants& consts);

// Integrates the first-order system
//     m' = (w / r^{1+a})^{1/(p-1)},
//     w' = alpha f(r, beta m) r^{1+a} - k b(r) w,
// from (m, w)(R0) = (M0, 0) with classical RK4, one step per grid panel.
// When R0 = 0 the first panel is bridged by the leading-order expansion
//     m ~ M0 + (alpha f(0, beta M0) / (2+a))^{1/(p-1)} (p-1)/p r^{p/(p-1)},
//     w ~ (alpha f(0, beta M0) / (2+a)) r^{2+a}.
Trace independent_integrate(const NonlinearityF& f, const DriftB& b,
                            const ProblemParams& params, const ComparisonConstants& consts,
                            double M0, std::shared_ptr<const RadialGrid> grid);

// Centered first derivative on the grid (second-order one-sided stencils
// at the endpoints).
Array centered_derivative(const RadialGrid& grid, const Array& values);

}  // namespace radcomp
