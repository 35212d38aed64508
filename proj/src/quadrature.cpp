#include "radcomp/quadrature.hpp"

#include <cmath>

namespace radcomp {

namespace {

// Trapezoid panel of xi^w * exp-decay * g over [r0, r1], with the product
// rule on the panel that starts at the origin: there the weight vanishes
// and the plain trapezoid is O(1) off in relative terms, which would plant
// a kink at the first node.  Integrating the weight exactly against a
// linear g (exponential frozen at the panel midpoint) keeps the startup
// error at the overall quadrature order.  Coefficients stay non-negative,
// so monotonicity in g is preserved.
double weighted_panel(double r0, double r1, double weight_exp, double decay, double g0,
                      double g1) {
  const double h = r1 - r0;
  if (r0 == 0.0 && weight_exp > 0.0) {
    const double wp1 = weight_exp + 1.0;
    const double wp2 = weight_exp + 2.0;
    const double scale = std::sqrt(decay) * positive_power(r1, wp1);
    return scale * (g0 * (1.0 / wp1 - 1.0 / wp2) + g1 / wp2);
  }
  const double w0 = weight_exp == 0.0 ? 1.0 : positive_power(r0, weight_exp);
  const double w1 = weight_exp == 0.0 ? 1.0 : positive_power(r1, weight_exp);
  return 0.5 * h * (decay * w0 * g0 + w1 * g1);
}

}  // namespace

Array weighted_inner_from(const RadialGrid& grid, const Array& gvals, double weight_exp,
                          double k, Index j_begin) {
  const Index n = grid.size();
  if (gvals.size() != n) throw invalid_input("inner: source length mismatch");

  Array inner = Array::Zero(n);
  double acc = 0.0;
  for (Index j = j_begin; j + 1 < n; ++j) {
    const double decay = std::exp(-k * (grid.drift(j + 1) - grid.drift(j)));
    acc = decay * acc + weighted_panel(grid.node(j), grid.node(j + 1), weight_exp, decay,
                                       gvals[j], gvals[j + 1]);
    inner[j + 1] = acc;
  }
  return inner;
}

double kernel_window_integral(const RadialGrid& grid, const Array& gvals, double weight_exp,
                              double k, Index j_lo, Index j_hi, Index j_anchor) {
  if (j_lo > j_hi || j_anchor < j_hi) throw invalid_input("window: bad node range");
  double acc = 0.0;
  for (Index j = j_lo; j < j_hi; ++j) {
    const double decay = std::exp(-k * (grid.drift(j + 1) - grid.drift(j)));
    acc = decay * acc + weighted_panel(grid.node(j), grid.node(j + 1), weight_exp, decay,
                                       gvals[j], gvals[j + 1]);
  }
  // shift the anchor from j_hi out to j_anchor; the factor is <= 1
  if (j_anchor > j_hi)
    acc *= std::exp(-k * (grid.drift(j_anchor) - grid.drift(j_hi)));
  return acc;
}

Array cumulative_trapezoid_from(const RadialGrid& grid, const Array& vals, Index j_begin,
                                double origin_power) {
  const Index n = grid.size();
  if (vals.size() != n) throw invalid_input("cumtrapz: length mismatch");
  Array out = Array::Zero(n);
  double acc = 0.0;
  for (Index j = j_begin; j + 1 < n; ++j) {
    const double h = grid.node(j + 1) - grid.node(j);
    if (j == j_begin && grid.node(j) == 0.0 && vals[j] == 0.0 && origin_power > 0.0) {
      // integrand behaves like t^s at the origin; for s = 1 this is the
      // plain trapezoid again
      acc += h * vals[j + 1] / (origin_power + 1.0);
    } else {
      acc += 0.5 * h * (vals[j] + vals[j + 1]);
    }
    out[j + 1] = acc;
  }
  return out;
}

KernelAccumulator inner_integral(const Trace& g, const ProblemParams& params) {
  for (Index j = 0; j < g.size(); ++j)
    if (g.values[j] < 0.0) throw invalid_input("inner: source must be non-negative");
  KernelAccumulator acc;
  acc.grid = g.grid;
  acc.source_label = to_string(g.label);
  acc.inner = weighted_inner_from(*g.grid, g.values, params.weight_exponent(), params.k, 0);
  return acc;
}

Trace kernel(const KernelAccumulator& acc, double alpha, const ProblemParams& params) {
  if (!(alpha > 0.0)) throw invalid_input("kernel: requires alpha > 0");
  const RadialGrid& grid = *acc.grid;
  const double e = params.conjugate();
  const double w = params.weight_exponent();
  Array K(grid.size());
  for (Index j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    if (r == 0.0) {
      K[j] = 0.0;  // removable singularity: K(t) = O(t^{1/(p-1)})
    } else {
      K[j] = positive_power(alpha * acc.inner[j] / positive_power(r, w), e);
    }
  }
  return Trace(acc.grid, std::move(K), TraceLabel::kernel);
}

Array source_samples(const Trace& M, const NonlinearityF& f, double beta) {
  const RadialGrid& grid = *M.grid;
  Array g(grid.size());
  for (Index j = 0; j < grid.size(); ++j) g[j] = f(grid.node(j), beta * M.values[j]);
  return g;
}

Trace lower_bound_integral(const Trace& M, const NonlinearityF& f,
                           const ProblemParams& params, const ComparisonConstants& consts) {
  if (!M.non_decreasing()) throw invalid_input("bound: M must be non-decreasing");
  if (!(M.values[0] > 0.0)) throw invalid_input("bound: M must start positive");

  Trace g(M.grid, source_samples(M, f, consts.beta), TraceLabel::u);
  const KernelAccumulator acc = inner_integral(g, params);
  const Trace K = kernel(acc, consts.alpha, params);
  // K(t) = O(t^{1/(p-1)}) at the origin
  return Trace(M.grid,
               cumulative_trapezoid_from(*M.grid, K.values, 0, params.conjugate()),
               TraceLabel::bound);
}

}  // namespace radcomp
