#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "radcomp/quadrature.hpp"

using namespace radcomp;
using radcomp::testing::TestRng;

namespace {

ComparisonConstants unit_constants(double alpha, double beta) {
  ComparisonConstants c;
  c.alpha = alpha;
  c.beta = beta;
  return c;
}

}  // namespace

TEST_CASE("inner integral of zero source vanishes") {
  ProblemParams params;
  auto grid = RadialGrid::uniform(0.0, 1.0, 33, DriftB::zero());
  Trace g(grid, Array::Zero(33), TraceLabel::u);
  const KernelAccumulator acc = inner_integral(g, params);
  CHECK((acc.inner == 0.0).all());
  CHECK(acc.inner[0] == 0.0);
}

TEST_CASE("inner integral rejects negative sources") {
  ProblemParams params;
  auto grid = RadialGrid::uniform(0.0, 1.0, 5, DriftB::zero());
  Array g = Array::Zero(5);
  g[3] = -0.1;
  CHECK_THROWS_AS(inner_integral(Trace(grid, g, TraceLabel::u), params), invalid_input);
}

TEST_CASE("inner integral: b=0, g=1, a=0 gives t^2/2 at second order") {
  ProblemParams params;
  params.a = 0.0;
  params.p = 1.5;  // a > p-2 holds; the inner integral ignores p

  double prev_err = 0.0;
  for (Index n : {65, 129}) {
    auto grid = RadialGrid::uniform(0.0, 1.0, n, DriftB::zero());
    Trace g(grid, Array::Ones(n), TraceLabel::u);
    const KernelAccumulator acc = inner_integral(g, params);
    double err = 0.0;
    for (Index j = 1; j < n; ++j) {
      const double t = grid->node(j);
      err = std::max(err, std::abs(acc.inner[j] - 0.5 * t * t) / (0.5 * t * t));
    }
    if (prev_err > 0.0) CHECK(prev_err / err > 3.0);  // ~4x per halving
    prev_err = err;
    CHECK(err < 1e-3);
  }
}

TEST_CASE("inner integral with constant drift matches adaptive quadrature") {
  // b = 3, k = 1, a = 0: I(t) = int_0^t xi e^{-3(t-xi)} dxi, checked both
  // against adaptive Simpson and the closed antiderivative
  ProblemParams params;
  params.a = 0.0;
  params.k = 1.0;
  const double lambda = 3.0;

  const Index n = 8193;
  auto grid = RadialGrid::uniform(0.0, 1.0, n, DriftB::constant(lambda));
  Trace g(grid, Array::Ones(n), TraceLabel::u);
  const KernelAccumulator acc = inner_integral(g, params);

  for (double t : {0.25, 0.5, 1.0}) {
    const Index jt = grid->index_at_or_below(t);
    const double oracle = radcomp::testing::adaptive_simpson(
        [&](double xi) { return xi * std::exp(-lambda * (t - xi)); }, 0.0, t, 1e-14);
    const double closed =
        t / lambda - (1.0 - std::exp(-lambda * t)) / (lambda * lambda);
    CHECK(oracle == doctest::Approx(closed).epsilon(1e-10));
    CHECK(acc.inner[jt] == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("recurrence equals direct summation with the full exponent") {
  // random non-uniform-ish data with k*B up to ~30
  ProblemParams params;
  params.a = 1.2;
  params.k = 2.0;
  const Index n = 257;
  auto grid = RadialGrid::uniform(0.0, 3.0, n, DriftB::constant(5.0));  // kB(3) = 30
  TestRng rng(99);
  Array g(n);
  for (Index j = 0; j < n; ++j) g[j] = rng.uniform(0.0, 2.0);

  const Array inner = weighted_inner_from(*grid, g, params.weight_exponent(), params.k, 0);
  for (Index jt : {Index(1), Index(50), Index(128), Index(256)}) {
    const double direct = radcomp::testing::direct_weighted_inner(
        *grid, g, params.weight_exponent(), params.k, jt);
    CHECK(inner[jt] == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("kernel: zero accumulator, p=2 identity, and the power-law closed form") {
  ProblemParams params;  // p=2, a=1, n=3
  const Index n = 129;
  auto grid = RadialGrid::uniform(0.0, 1.0, n, DriftB::zero());

  KernelAccumulator zero;
  zero.grid = grid;
  zero.inner = Array::Zero(n);
  const Trace K0 = kernel(zero, 0.5, params);
  CHECK((K0.values == 0.0).all());

  // b=0, g=c, a=n-2, p=2: K(t) = alpha c t / n  (I(t) = c t^n / n)
  const double c = 2.0;
  const double alpha = 0.25;
  Trace g(grid, Array::Constant(n, c), TraceLabel::u);
  const KernelAccumulator acc = inner_integral(g, params);
  const Trace K = kernel(acc, alpha, params);
  CHECK(K.values[0] == 0.0);  // removable singularity at r = 0
  for (Index j = 1; j < n; ++j) {
    const double t = grid->node(j);
    CHECK(K.values[j] == doctest::Approx(alpha * c * t / 3.0).epsilon(2e-3));
  }

  // p = 2 means no root is taken: K = alpha I / r^2 exactly
  for (Index j = 1; j < n; ++j) {
    const double r = grid->node(j);
    CHECK(K.values[j] == alpha * acc.inner[j] / (r * r));
  }
}

TEST_CASE("lower bound integral: zero source and the quadratic closed form") {
  ProblemParams params;  // p=2, a=1 (n=3), R0=0
  const ComparisonConstants consts = unit_constants(0.125, 0.5);
  const Index n = 513;
  auto grid = RadialGrid::uniform(0.0, 1.0, n, DriftB::zero());
  Trace M(grid, Array::Ones(n), TraceLabel::M);

  const Trace zero = lower_bound_integral(M, NonlinearityF::zero(), params, consts);
  CHECK((zero.values == 0.0).all());

  const double c = 3.0;
  const Trace bound = lower_bound_integral(M, NonlinearityF::constant(c), params, consts);
  CHECK(bound.values[0] == 0.0);
  CHECK(bound.non_decreasing());
  for (Index j = 1; j < n; ++j) {
    const double r = grid->node(j);
    CHECK(bound.values[j] ==
          doctest::Approx(consts.alpha * c * r * r / 6.0).epsilon(5e-4));
  }
}

TEST_CASE("lower bound converges at second order on the closed form") {
  ProblemParams params;
  const ComparisonConstants consts = unit_constants(1.0, 0.5);
  const double c = 1.0;

  auto sup_error = [&](Index n) {
    auto grid = RadialGrid::uniform(0.0, 1.0, n, DriftB::zero());
    Trace M(grid, Array::Ones(n), TraceLabel::M);
    const Trace bound = lower_bound_integral(M, NonlinearityF::constant(c), params, consts);
    double err = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double r = grid->node(j);
      err = std::max(err, std::abs(bound.values[j] - c * r * r / 6.0));
    }
    return err;
  };

  const double e1 = sup_error(129);
  const double e2 = sup_error(257);
  const double ratio = e1 / e2;
  CHECK(ratio > 3.0);  // order ~2 with a mild log factor from the origin
  CHECK(ratio < 5.0);
}

TEST_CASE("monotonicity transfer: larger source, larger I, K and bound") {
  ProblemParams params;
  params.a = 0.7;
  params.k = 1.5;
  const ComparisonConstants consts = unit_constants(0.5, 0.5);
  const Index n = 65;
  auto grid = RadialGrid::uniform(0.0, 2.0, n, DriftB::constant(0.5));

  TestRng rng(5);
  Array g1(n), g2(n);
  for (Index j = 0; j < n; ++j) {
    g1[j] = rng.uniform(0.0, 1.0);
    g2[j] = g1[j] + rng.uniform(0.0, 0.5);
  }
  const Array i1 = weighted_inner_from(*grid, g1, params.weight_exponent(), params.k, 0);
  const Array i2 = weighted_inner_from(*grid, g2, params.weight_exponent(), params.k, 0);
  CHECK((i2 >= i1).all());

  KernelAccumulator a1{grid, i1, "g1"}, a2{grid, i2, "g2"};
  const Trace k1 = kernel(a1, consts.alpha, params);
  const Trace k2 = kernel(a2, consts.alpha, params);
  CHECK((k2.values >= k1.values).all());

  const Array b1 = cumulative_trapezoid_from(*grid, k1.values, 0);
  const Array b2 = cumulative_trapezoid_from(*grid, k2.values, 0);
  CHECK((b2 >= b1).all());
}

TEST_CASE("bound is invariant under a constant drift offset") {
  // only differences of B enter the kernel
  ProblemParams params;
  const ComparisonConstants consts = unit_constants(0.5, 0.5);
  const Index n = 129;
  auto base = RadialGrid::uniform(0.0, 1.0, n, DriftB::power(2.0, 1.0));
  auto shifted =
      std::make_shared<RadialGrid>(base->nodes(), Array(base->cumulative_drift() + 17.0));

  Array mvals(n);
  for (Index j = 0; j < n; ++j) mvals[j] = 1.0 + base->node(j);
  const NonlinearityF f = NonlinearityF::power(1.0, 1.0);

  const Trace bound_base =
      lower_bound_integral(Trace(base, mvals, TraceLabel::M), f, params, consts);
  const Trace bound_shift =
      lower_bound_integral(Trace(shifted, mvals, TraceLabel::M), f, params, consts);
  for (Index j = 0; j < n; ++j)
    CHECK(bound_shift.values[j] == doctest::Approx(bound_base.values[j]).epsilon(1e-12));
}
