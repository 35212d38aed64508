#include "radcomp/oracle.hpp"

#include <algorithm>

#include <cmath>
#include <limits>
#include <utility>

#include "radcomp/ode_verify.hpp"

namespace radcomp {

Trace radial_divergence(const Trace& u_profile, const ProblemParams& params) {
  const RadialGrid& grid = *u_profile.grid;
  const Index n = grid.size();
  if (n < 4) throw invalid_input("divergence: needs at least 4 nodes");
  if (!u_profile.non_decreasing())
    throw invalid_input("divergence: profile must be non-decreasing");

  const Array du = centered_derivative(grid, u_profile.values);
  const double surf = static_cast<double>(params.n - 1);
  const double dim = static_cast<double>(params.n);

  Array flux(n);
  for (Index j = 0; j < n; ++j)
    flux[j] = positive_power(grid.node(j), surf) * signed_power(du[j], params.p - 1.0);

  // centered flux difference in finite-volume form: the bracket of flux
  // divided by the bracket of the integrated weight r^n / n.  This keeps
  // the quotient exact whenever the divergence is constant (flux = G r^n/n)
  // and regular through r = 0.
  const auto bracket = [&](Index lo, Index hi) {
    const double weight =
        (positive_power(grid.node(hi), dim) - positive_power(grid.node(lo), dim)) / dim;
    return (flux[hi] - flux[lo]) / weight;
  };

  Array G(n);
  G[0] = bracket(0, 1);
  for (Index j = 1; j + 1 < n; ++j) G[j] = bracket(j - 1, j + 1);
  G[n - 1] = bracket(n - 2, n - 1);
  return Trace(u_profile.grid, std::move(G), TraceLabel::u);
}

namespace {

AdmissiblePair build_pair(const Trace& u_profile, const ProblemParams& params,
                          const Array& source, const DriftB& drift) {
  const RadialGrid& grid = *u_profile.grid;
  for (Index j = 0; j < source.size(); ++j)
    if (source[j] < 0.0)
      throw not_admissible("profile not admissible: negative divergence at r=" +
                           std::to_string(grid.node(j)) + "; use a more convex profile");

  RadialField field;
  field.levels = Array::Constant(1, 1.0);  // level-independent source
  field.values = source.matrix();

  Array drift_samples(grid.size());
  for (Index j = 0; j < grid.size(); ++j) drift_samples[j] = drift(grid.node(j));

  auto [f, b] = shell_envelope(field, drift_samples, params, grid);

  auto drift_grid = std::make_shared<RadialGrid>(grid.nodes(), b);
  Trace M(drift_grid, u_profile.values, TraceLabel::M);
  return AdmissiblePair{std::move(f), std::move(b), std::move(M)};
}

}  // namespace

AdmissiblePair admissible_pair_from_profile(const Trace& u_profile,
                                            const ProblemParams& params) {
  const Trace G = radial_divergence(u_profile, params);
  return build_pair(u_profile, params, G.values, DriftB::zero());
}

AdmissiblePair admissible_pair_with_drift(const Trace& u_profile,
                                          const ProblemParams& params, const DriftB& drift) {
  const RadialGrid& grid = *u_profile.grid;
  const Trace G = radial_divergence(u_profile, params);
  const Array du = centered_derivative(grid, u_profile.values);
  Array source(grid.size());
  for (Index j = 0; j < grid.size(); ++j)
    source[j] = G.values[j] + drift(grid.node(j)) * signed_power(du[j], params.p - 1.0);
  return build_pair(u_profile, params, source, drift);
}

AdmissiblePair admissible_pair_power_level(const Trace& u_profile,
                                           const ProblemParams& params, double level_exp) {
  if (level_exp < 0.0) throw invalid_input("level exponent must be non-negative");
  const RadialGrid& grid = *u_profile.grid;
  const Index n = grid.size();
  const Trace G = radial_divergence(u_profile, params);

  Array ratio(n);
  for (Index j = 0; j < n; ++j) {
    if (G.values[j] < 0.0)
      throw not_admissible("profile not admissible: negative divergence at r=" +
                           std::to_string(grid.node(j)) + "; use a more convex profile");
    if (!(u_profile.values[j] > 0.0))
      throw not_admissible("level minorant requires a positive profile");
    ratio[j] = G.values[j] / positive_power(u_profile.values[j], level_exp);
  }

  // shell minimum of G / u^q, linearly interpolated between nodes
  auto coeff = std::make_shared<Array>(n);
  for (Index j = 0; j < n; ++j) {
    const auto [lo, hi] = shell_window(grid, grid.node(j), params.sigma);
    (*coeff)[j] = ratio.segment(lo, hi - lo + 1).minCoeff();
  }
  auto nodes = std::make_shared<Array>(grid.nodes());
  const double q = level_exp;
  NonlinearityF f = NonlinearityF::from_function(
      [coeff, nodes, q](double r, double t) {
        const Index count = nodes->size();
        double c;
        if (r <= (*nodes)[0]) {
          c = (*coeff)[0];
        } else if (r >= (*nodes)[count - 1]) {
          c = (*coeff)[count - 1];
        } else {
          const double* begin = nodes->data();
          const double* it = std::upper_bound(begin, begin + count, r);
          const Index hi = static_cast<Index>(it - begin);
          const double w = (r - (*nodes)[hi - 1]) / ((*nodes)[hi] - (*nodes)[hi - 1]);
          c = (*coeff)[hi - 1] + w * ((*coeff)[hi] - (*coeff)[hi - 1]);
        }
        return c * positive_power(t, q);
      },
      "power-level");

  Trace M(u_profile.grid, u_profile.values, TraceLabel::M);
  return AdmissiblePair{std::move(f), DriftB::zero(), std::move(M)};
}

ComparisonReport verify_comparison(const Trace& M, const NonlinearityF& f, const DriftB& b,
                                   const ProblemParams& params,
                                   const ComparisonConstants& consts, double tol) {
  if (!M.non_decreasing()) throw invalid_input("comparison: M must be non-decreasing");
  const double M0 = M.values[0];
  if (!(M0 > 0.0)) throw invalid_input("comparison: requires M(R0) > 0");
  if (!(tol > 0.0)) throw invalid_input("comparison: requires tol > 0");

  // rebuild the grid so the kernel drift is exactly the supplied b
  auto grid = std::make_shared<RadialGrid>(M.grid->nodes(), b);
  const Trace Mb(grid, M.values, TraceLabel::M);

  PicardOptions options;
  options.tol = std::min(options.tol, 0.1 * tol);

  ComparisonReport report;
  report.solve = solve_comparison_function(f, params, consts, grid, M0, options);
  if (report.solve.blowup)
    throw comparison_failure(
        "comparison function blows up at r~" +
        std::to_string(report.solve.blowup->radius_estimate) +
        " while the envelope stays finite; reduce alpha");

  report.bound = lower_bound_integral(Mb, f, params, consts);

  const Index n = M.size();
  report.min_margin_m = std::numeric_limits<double>::infinity();
  report.min_margin_bound = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < n; ++j) {
    const double margin_m = M.values[j] - report.solve.m.values[j];
    if (margin_m < report.min_margin_m) {
      report.min_margin_m = margin_m;
      report.argmin_m = j;
    }
    const double margin_bound = M.values[j] - M0 - report.bound.values[j];
    if (margin_bound < report.min_margin_bound) {
      report.min_margin_bound = margin_bound;
      report.argmin_bound = j;
    }
  }
  report.passed = report.min_margin_m >= -tol && report.min_margin_bound >= -tol;
  return report;
}

double bisect_alpha_star(const Trace& M, const NonlinearityF& f, const DriftB& b,
                         const ProblemParams& params, const ComparisonConstants& consts,
                         double tol, int max_steps, double initial_alpha) {
  const auto passes = [&](double alpha) {
    ComparisonConstants c = consts;
    c.alpha = alpha;
    try {
      return verify_comparison(M, f, b, params, c, tol).passed;
    } catch (const comparison_failure&) {
      return false;
    }
  };

  int steps = 0;
  double lo = 0.0;
  double hi = initial_alpha;
  while (steps < max_steps && passes(hi)) {
    lo = hi;
    hi *= 2.0;
    ++steps;
  }
  if (steps == max_steps) return lo;  // never failed within budget

  while (steps < max_steps) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid))
      lo = mid;
    else
      hi = mid;
    ++steps;
  }
  return lo;
}

Trace make_profile(const std::string& name, std::shared_ptr<const RadialGrid> grid) {
  const Array& r = grid->nodes();
  Array u(r.size());
  if (name == "quadratic") {
    u = 1.0 + r.square();
  } else if (name == "exp") {
    u = r.square().exp();
  } else if (name.rfind("power:", 0) == 0) {
    const double q = std::stod(name.substr(6));
    if (!(q >= 2.0)) throw invalid_input("profile power exponent must be >= 2");
    for (Index j = 0; j < r.size(); ++j) u[j] = 1.0 + positive_power(r[j], q);
  } else {
    throw invalid_input("unknown profile '" + name +
                        "' (expected quadratic, power:<q>, exp)");
  }
  return Trace(std::move(grid), std::move(u), TraceLabel::u);
}

}  // namespace radcomp
