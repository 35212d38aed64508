#pragma once

// Test-only independent oracles.  Everything here is deliberately written
// against the math, not against the library code paths it checks.

#include <cmath>
#include <functional>
#include <random>

#include "radcomp/problem.hpp"

namespace radcomp::testing {

// Adaptive Simpson quadrature with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 24) {
  const auto simpson = [&](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
  };
  std::function<double(double, double, double, double, int)> recurse =
      [&](double lo, double hi, double whole, double eps, int level) -> double {
    const double mid = 0.5 * (lo + hi);
    const double left = simpson(lo, mid);
    const double right = simpson(mid, hi);
    if (level <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return recurse(lo, mid, left, 0.5 * eps, level - 1) +
           recurse(mid, hi, right, 0.5 * eps, level - 1);
  };
  return recurse(a, b, simpson(a, b), tol, depth);
}

// Direct panel summation of the weighted kernel integral at node jt,
// forming the full exponential of B differences panel by panel (the naive
// route the stable recurrence must reproduce).  Uses the same panel rules:
// plain trapezoid except for the product rule on a panel starting at the
// origin, where the exponential is taken at the panel midpoint.
inline double direct_weighted_inner(const RadialGrid& grid, const Array& gvals,
                                    double weight_exp, double k, Index jt) {
  double sum = 0.0;
  for (Index j = 0; j + 1 <= jt; ++j) {
    const double r0 = grid.node(j);
    const double r1 = grid.node(j + 1);
    const double h = r1 - r0;
    if (r0 == 0.0 && weight_exp > 0.0) {
      const double wp1 = weight_exp + 1.0;
      const double wp2 = weight_exp + 2.0;
      const double decay_mid =
          std::exp(-k * (grid.drift(jt) - 0.5 * (grid.drift(j) + grid.drift(j + 1))));
      sum += decay_mid * std::pow(r1, wp1) *
             (gvals[j] * (1.0 / wp1 - 1.0 / wp2) + gvals[j + 1] / wp2);
      continue;
    }
    const auto integrand = [&](Index i) {
      return std::pow(grid.node(i), weight_exp) *
             std::exp(-k * (grid.drift(jt) - grid.drift(i))) * gvals[i];
    };
    sum += 0.5 * h * (integrand(j) + integrand(j + 1));
  }
  return sum;
}

// Least non-decreasing majorant by exhaustive scan.
inline Array brute_force_envelope(const Array& v) {
  Array out(v.size());
  for (Index j = 0; j < v.size(); ++j) {
    double best = v[0];
    for (Index i = 1; i <= j; ++i) best = std::max(best, v[i]);
    out[j] = best;
  }
  return out;
}

// Fixed-step RK4 for the scalar second-order problem
//   m'' = rhs(r, m, m'),  m(0) = m0, m'(0) = 0,
// with the first step bridged by the series m ~ m0 + c2 r^2 where
// 2 c2 = rhs-limit at r = 0 divided by (1 + singular_coeff), supplied by
// the caller.  Integration stops when m exceeds cap; returns the radius of
// the last step whose value stayed below cap (the blow-up estimate) or a
// negative value when no blow-up happened before r_end.
struct BlowupOracle {
  std::function<double(double, double, double)> rhs;  // (r, m, mp)
  double m0 = 1.0;
  double c2 = 0.0;  // series curvature at the origin: m ~ m0 + c2 r^2
  double cap = 1e12;

  double blowup_radius(double r_end, Index steps) const {
    const double h = r_end / static_cast<double>(steps);
    double r = h;
    double m = m0 + c2 * h * h;
    double mp = 2.0 * c2 * h;
    while (r < r_end) {
      const auto f = [&](double rr, double mm, double vv) { return rhs(rr, mm, vv); };
      const double k1m = mp, k1v = f(r, m, mp);
      const double k2m = mp + 0.5 * h * k1v, k2v = f(r + 0.5 * h, m + 0.5 * h * k1m, k2m);
      const double k3m = mp + 0.5 * h * k2v, k3v = f(r + 0.5 * h, m + 0.5 * h * k2m, k3m);
      const double k4m = mp + h * k3v, k4v = f(r + h, m + h * k3m, k4m);
      m += h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
      mp += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      r += h;
      if (!std::isfinite(m) || m > cap) return r;
    }
    return -1.0;
  }
};

// Deterministic uniform helper for property tests.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  Index index(Index lo, Index hi) {  // inclusive bounds
    return lo + static_cast<Index>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace radcomp::testing
