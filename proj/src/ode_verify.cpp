#include "radcomp/ode_verify.hpp"

#include <cmath>
#include <utility>

namespace radcomp {

Array centered_derivative(const RadialGrid& grid, const Array& values) {
  const Index n = grid.size();
  if (n < 3) throw invalid_input("derivative: needs at least 3 nodes");
  Array d(n);
  for (Index j = 1; j + 1 < n; ++j) {
    const double hm = grid.node(j) - grid.node(j - 1);
    const double hp = grid.node(j + 1) - grid.node(j);
    d[j] = -hp / (hm * (hm + hp)) * values[j - 1] +
           (hp - hm) / (hm * hp) * values[j] +
           hm / (hp * (hm + hp)) * values[j + 1];
  }
  {
    const double h0 = grid.node(1) - grid.node(0);
    const double h1 = grid.node(2) - grid.node(1);
    d[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * values[0] +
           (h0 + h1) / (h0 * h1) * values[1] -
           h0 / (h1 * (h0 + h1)) * values[2];
    const double g1 = grid.node(n - 1) - grid.node(n - 2);
    const double g0 = grid.node(n - 2) - grid.node(n - 3);
    d[n - 1] = g1 / (g0 * (g0 + g1)) * values[n - 3] -
               (g0 + g1) / (g0 * g1) * values[n - 2] +
               (2.0 * g1 + g0) / (g1 * (g0 + g1)) * values[n - 1];
  }
  return d;
}

Trace flux_residual(const Trace& m, const NonlinearityF& f, const ProblemParams& params,
                    const ComparisonConstants& consts) {
  const RadialGrid& grid = *m.grid;
  if (grid.size() < 3) throw invalid_input("residual: needs at least 3 nodes");
  if (!(m.values[0] > 0.0)) throw invalid_input("residual: m must start positive");
  if (!m.non_decreasing()) throw invalid_input("residual: m must be non-decreasing");

  Trace g(m.grid, source_samples(m, f, consts.beta), TraceLabel::u);
  const KernelAccumulator acc = inner_integral(g, params);

  const Array dm = centered_derivative(grid, m.values);
  const double w = params.weight_exponent();
  const Index n = grid.size();
  const double scale = std::max(1.0, consts.alpha * acc.inner[n - 1]);

  Array D(n);
  for (Index j = 0; j < n; ++j) {
    const double flux = positive_power(grid.node(j), w) * signed_power(dm[j], params.p - 1.0);
    D[j] = (flux - consts.alpha * acc.inner[j]) / scale;
  }
  return Trace(m.grid, std::move(D), TraceLabel::residual);
}

Trace pointwise_residual_p2(const Trace& m, const NonlinearityF& f, const DriftB& b,
                            const ProblemParams& params, const ComparisonConstants& consts) {
  if (params.p != 2.0)
    throw invalid_input("pointwise residual: defined only for p = 2");
  const RadialGrid& grid = *m.grid;
  const Index n = grid.size();
  if (n < 3) throw invalid_input("residual: needs at least 3 nodes");

  Array R = Array::Zero(n);
  for (Index j = 1; j + 1 < n; ++j) {
    const double r = grid.node(j);
    const double hm = r - grid.node(j - 1);
    const double hp = grid.node(j + 1) - r;
    const double d1 = -hp / (hm * (hm + hp)) * m.values[j - 1] +
                      (hp - hm) / (hm * hp) * m.values[j] +
                      hm / (hp * (hm + hp)) * m.values[j + 1];
    const double d2 = 2.0 / (hm * (hm + hp)) * m.values[j - 1] -
                      2.0 / (hm * hp) * m.values[j] +
                      2.0 / (hp * (hm + hp)) * m.values[j + 1];
    R[j] = d2 + ((1.0 + params.a) / r + params.k * b(r)) * d1 -
           consts.alpha * f(r, consts.beta * m.values[j]);
  }
  return Trace(m.grid, std::move(R), TraceLabel::residual);
}

namespace {

struct FluxState {
  double m;
  double w;
};

FluxState derivative(double r, const FluxState& y, const NonlinearityF& f, const DriftB& b,
                     const ProblemParams& params, const ComparisonConstants& consts) {
  const double wexp = params.weight_exponent();
  const double rw = positive_power(r, wexp);
  const double wpos = y.w > 0.0 ? y.w : 0.0;
  FluxState d;
  d.m = positive_power(wpos / rw, params.conjugate());
  d.w = consts.alpha * f(r, consts.beta * y.m) * rw - params.k * b(r) * y.w;
  return d;
}

}  // namespace

Trace independent_integrate(const NonlinearityF& f, const DriftB& b,
                            const ProblemParams& params, const ComparisonConstants& consts,
                            double M0, std::shared_ptr<const RadialGrid> grid) {
  if (!(M0 > 0.0)) throw invalid_input("integrate: requires M0 > 0");
  const Index n = grid->size();
  Array out(n);
  out[0] = M0;

  Index start = 0;
  FluxState y{M0, 0.0};

  if (grid->node(0) == 0.0) {
    // leading-order series bridges the degenerate first panel
    const double f0 = f(0.0, consts.beta * M0);
    const double coef = consts.alpha * f0 / (2.0 + params.a);
    const double r1 = grid->node(1);
    const double e = params.conjugate();
    y.m = M0 + positive_power(coef, e) * ((params.p - 1.0) / params.p) *
                   positive_power(r1, params.p / (params.p - 1.0));
    y.w = coef * positive_power(r1, 2.0 + params.a);
    out[1] = y.m;
    start = 1;
  }

  for (Index j = start; j + 1 < n; ++j) {
    const double r = grid->node(j);
    const double h = grid->node(j + 1) - r;

    const FluxState k1 = derivative(r, y, f, b, params, consts);
    const FluxState y2{y.m + 0.5 * h * k1.m, y.w + 0.5 * h * k1.w};
    const FluxState k2 = derivative(r + 0.5 * h, y2, f, b, params, consts);
    const FluxState y3{y.m + 0.5 * h * k2.m, y.w + 0.5 * h * k2.w};
    const FluxState k3 = derivative(r + 0.5 * h, y3, f, b, params, consts);
    const FluxState y4{y.m + h * k3.m, y.w + h * k3.w};
    const FluxState k4 = derivative(r + h, y4, f, b, params, consts);

    y.m += h / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    y.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);

    if (y.w < -1e-12 * (1.0 + std::abs(y.w)))
      throw invalid_input("integrate: flux became negative, inconsistent data");
    if (y.w < 0.0) y.w = 0.0;

    out[j + 1] = y.m;
  }
  return Trace(std::move(grid), std::move(out), TraceLabel::m);
}

}  // namespace radcomp
