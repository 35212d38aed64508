#pragma once

// Manufactured radial solutions for end-to-end checks.  A smooth convex
// profile u acts as an equality solution of the divergence inequality
// with A(x,xi) = |xi|^{p-2} xi; its radial divergence G supplies the
// admissible minorant f through the shell window, and u itself is the
// sphere envelope M, so the comparison function and the bound integral
// can be tested against exact data.

#include <memory>
#include <string>

#include "radcomp/envelope.hpp"
#include "radcomp/picard.hpp"

namespace radcomp {

// G_j = (1/r_j^{n-1}) d/dr [ r^{n-1} |u'|^{p-2} u' ]_j by centered
// differences of the flux.  At r = 0 the removable limit n * flux(r_1) /
// r_1^n is used.  Requires at least 4 nodes.
Trace radial_divergence(const Trace& u_profile, const ProblemParams& params);

struct AdmissiblePair {
  NonlinearityF f;
  DriftB b;
  Trace M;  // lives on a grid whose cumulative drift matches b
};

// Equality-solution pair with zero drift: f(r, .) = min of G over the
// shell window (level-independent), b = 0, M = u.  Throws not_admissible
// when G is negative anywhere.
AdmissiblePair admissible_pair_from_profile(const Trace& u_profile,
                                            const ProblemParams& params);

// Drift variant: the source becomes G + drift(r) (u')^{p-1} and the
// admissible drift is the shell maximum of the injected profile.
AdmissiblePair admissible_pair_with_drift(const Trace& u_profile,
                                          const ProblemParams& params, const DriftB& drift);

// Level-dependent minorant f(r, t) = c_q(r) t^q with
// c_q = shell minimum of G / u^q, valid where G is non-negative on the
// grid (checked).  Exercises the beta level-splitting for real: the
// comparison solve evaluates f at beta * m instead of a fixed level.
AdmissiblePair admissible_pair_power_level(const Trace& u_profile,
                                           const ProblemParams& params, double level_exp);

struct ComparisonReport {
  bool passed = false;
  double min_margin_m = 0.0;      // min_j (M_j - m_j)
  Index argmin_m = 0;
  double min_margin_bound = 0.0;  // min_j (M_j - M_0 - bound_j)
  Index argmin_bound = 0;
  PicardResult solve;
  Trace bound;
};

// Runs the comparison solve with M0 = M(R0), then checks M >= m - tol and
// M - M0 >= bound - tol at every node.  Throws comparison_failure when the
// comparison function blows up before Rmax.
ComparisonReport verify_comparison(const Trace& M, const NonlinearityF& f, const DriftB& b,
                                   const ProblemParams& params,
                                   const ComparisonConstants& consts, double tol);

// Largest kernel gain for which verify_comparison still passes, bracketed
// by doubling from initial_alpha and refined by bisection; at most
// max_steps probe evaluations in total.
double bisect_alpha_star(const Trace& M, const NonlinearityF& f, const DriftB& b,
                         const ProblemParams& params, const ComparisonConstants& consts,
                         double tol, int max_steps = 40, double initial_alpha = 1.0);

// Built-in profiles: "quadratic" (1 + r^2), "power:<q>" (1 + r^q),
// "exp" (exp(r^2)).
Trace make_profile(const std::string& name, std::shared_ptr<const RadialGrid> grid);

}  // namespace radcomp
