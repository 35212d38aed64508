#include "radcomp/growth_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace radcomp {

const char* to_string(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::L31: return "L3.1";
    case GrowthKind::C31: return "C3.1";
    case GrowthKind::C32: return "C3.2";
    case GrowthKind::L32: return "L3.2";
    case GrowthKind::L33: return "L3.3";
    case GrowthKind::L34: return "L3.4";
    case GrowthKind::L35: return "L3.5";
  }
  return "?";
}

GrowthKind parse_growth_kind(const std::string& name) {
  for (GrowthKind k : all_growth_kinds)
    if (name == to_string(k)) return k;
  throw invalid_input("unknown growth kind '" + name + "'");
}

namespace {

double drift_infimum(const RadialGrid& grid, const DriftB& b, double lo, double hi) {
  lo = std::max(lo, grid.front());
  hi = std::min(hi, grid.back());
  double inf = std::min(b(lo), b(hi));
  for (Index j = grid.index_at_or_above(lo); j <= grid.index_at_or_below(hi); ++j)
    inf = std::min(inf, b(grid.node(j)));
  return inf;
}

void require(bool ok, GrowthKind kind, const std::string& condition) {
  if (!ok)
    throw precondition_error(std::string(to_string(kind)) + " window requires " + condition);
}

}  // namespace

void validate_window(WindowSpec& w, const Trace& M, const NonlinearityF& f, const DriftB& b,
                     const ProblemParams& params, const ComparisonConstants& consts) {
  const RadialGrid& grid = *M.grid;
  const double R0 = grid.front();
  const double Rmax = grid.back();
  const GrowthKind kind = w.kind;
  const double sb = std::sqrt(consts.beta);

  require(consts.beta > 0.0 && consts.beta < 1.0, kind, "beta in (0,1)");
  require(w.r0 > R0, kind, "r0 > R0");
  require(w.r1 > w.r0, kind, "r1 > r0");
  require(w.r1 < Rmax, kind, "r1 < Rmax");

  const double M_r0 = M.value_at(w.r0);
  const double M_r1 = M.value_at(w.r1);

  switch (kind) {
    case GrowthKind::L31:
      require(params.sigma * params.sigma * w.r0 >= w.r1, kind, "sigma^2 * r0 >= r1");
      require(sb * M_r1 <= M_r0, kind, "beta^(1/2) * M(r1) <= M(r0)");
      if (!w.probe) w.probe = std::min(w.r1, params.sigma * w.r0);
      require(*w.probe >= w.r1 / params.sigma && *w.probe <= params.sigma * w.r0, kind,
              "probe s in [r1/sigma, sigma*r0]");
      w.lambda = drift_infimum(grid, b, w.r1 / params.sigma, params.sigma * w.r0);
      break;
    case GrowthKind::C31:
      require(params.sigma * w.r0 >= w.r1, kind, "sigma * r0 >= r1");
      require(sb * M_r1 <= M_r0, kind, "beta^(1/2) * M(r1) <= M(r0)");
      require(w.rho0.has_value() && w.rho1.has_value(), kind, "rho0 and rho1");
      require(*w.rho0 > R0, kind, "rho0 > R0");
      require(*w.rho1 > *w.rho0, kind, "rho1 > rho0");
      require(*w.rho1 < Rmax, kind, "rho1 < Rmax");
      require(*w.rho0 >= w.r1 / params.sigma, kind, "rho0 >= r1/sigma");
      require(*w.rho1 <= w.r1, kind, "rho1 <= r1");
      require(*w.rho1 - *w.rho0 <= w.r1 - w.r0, kind, "rho1 - rho0 <= r1 - r0");
      w.lambda = drift_infimum(grid, b, *w.rho0, *w.rho1);
      break;
    case GrowthKind::C32:
      require(params.sigma * w.r0 >= w.r1, kind, "sigma * r0 >= r1");
      require(sb * M_r1 <= M_r0, kind, "beta^(1/2) * M(r1) <= M(r0)");
      require(w.rho0.has_value() && w.rho1.has_value(), kind, "rho0 and rho1");
      require(*w.rho0 > R0, kind, "rho0 > R0");
      require(*w.rho1 > *w.rho0, kind, "rho1 > rho0");
      require(*w.rho0 >= w.r1 / params.sigma, kind, "rho0 >= r1/sigma");
      require(*w.rho1 < w.r0, kind, "rho1 < r0");
      require(w.r0 - *w.rho1 <= w.r1 - w.r0, kind, "r0 - rho1 <= r1 - r0");
      w.lambda = drift_infimum(grid, b, *w.rho0, w.r0);
      break;
    case GrowthKind::L32:
      require(sb * M_r1 <= M_r0, kind, "beta^(1/2) * M(r1) <= M(r0)");
      w.lambda = drift_infimum(grid, b, w.r0, w.r1);
      break;
    case GrowthKind::L33:
      require(sb * M_r1 <= M_r0, kind, "beta^(1/2) * M(r1) <= M(r0)");
      require(std::sqrt(params.sigma) * w.r0 <= w.r1, kind, "sigma^(1/2) * r0 <= r1");
      w.lambda = drift_infimum(grid, b, w.r0, w.r1);
      break;
    case GrowthKind::L34:
    case GrowthKind::L35: {
      if (kind == GrowthKind::L34)
        require(std::sqrt(params.sigma) * w.r0 <= w.r1, kind, "sigma^(1/2) * r0 <= r1");
      else
        require(w.r1 <= std::sqrt(params.sigma) * w.r0, kind, "r1 <= sigma^(1/2) * r0");
      const double target = sb * M_r1;
      require(M_r0 <= target, kind, "M(r0) <= beta^(1/2) * M(r1)");
      require(target <= M.value_right_of(w.r0), kind, "beta^(1/2) * M(r1) <= M(r0 + 0)");

      // domination hypothesis: the envelope stays above the bound integral
      const Trace bound = lower_bound_integral(M, /*f=*/f, params, consts);
      const Index j0 = grid.index_at_or_below(w.r0);
      if (kind == GrowthKind::L34) {
        require(M_r0 >= bound.values[j0], kind, "M(r0) >= bound integral at r0");
      } else {
        for (Index j = 1; j < j0; ++j)
          require(M.values[j] >= bound.values[j], kind,
                  "M >= bound integral on (R0, r0)");
      }
      w.lambda = drift_infimum(grid, b, R0, w.r0);
      break;
    }
  }
}

double growth_bound_rhs(const WindowSpec& w_in, const Trace& M, const NonlinearityF& f,
                        const DriftB& b, const ProblemParams& params,
                        const ComparisonConstants& consts) {
  WindowSpec w = w_in;
  validate_window(w, M, f, b, params, consts);

  const RadialGrid& grid = *M.grid;
  const double e = params.conjugate();
  const double wexp = params.weight_exponent();
  const double mu = params.decay_exponent();
  const double pc = params.p / (params.p - 1.0);
  const Array gvals = source_samples(M, f, consts.beta);

  // inner node ranges (subset of the requested radii, conservative)
  const Index jr0 = grid.index_at_or_below(w.r0);
  const Index jr1 = grid.index_at_or_below(w.r1);

  switch (w.kind) {
    case GrowthKind::L31: {
      const double fval = f(*w.probe, consts.beta * M.value_at(w.r1));
      const double gap = w.r1 - w.r0;
      double width = positive_power(gap, pc);
      if (w.lambda > 0.0) width = std::min(width, gap / positive_power(w.lambda, e));
      return consts.gamma_at(1) * width * positive_power(fval, e);
    }
    case GrowthKind::C31: {
      const Index jp0 = grid.index_at_or_above(*w.rho0);
      const Index jp1 = grid.index_at_or_below(*w.rho1);
      const double W =
          jp0 > jp1 ? 0.0 : kernel_window_integral(grid, gvals, 0.0, params.k, jp0, jp1, jp1);
      return consts.gamma_at(2) * (w.r1 - w.r0) * positive_power(W, e);
    }
    case GrowthKind::C32: {
      const Index jp0 = grid.index_at_or_above(*w.rho0);
      const Index jp1 = grid.index_at_or_below(*w.rho1);
      const double W =
          jp0 > jp1 ? 0.0 : kernel_window_integral(grid, gvals, 0.0, params.k, jp0, jp1, jr0);
      const double ratio = (w.r0 - *w.rho1) / (*w.rho1 - *w.rho0);
      return consts.gamma_at(3) * (w.r1 - w.r0) * positive_power(ratio * W, e);
    }
    case GrowthKind::L32: {
      const Array inner = weighted_inner_from(grid, gvals, wexp, params.k, jr0);
      Array integrand = Array::Zero(grid.size());
      for (Index j = jr0 + 1; j <= jr1; ++j)
        integrand[j] = positive_power(inner[j] / positive_power(grid.node(j), wexp), e);
      const Array cum = cumulative_trapezoid_from(grid, integrand, jr0);
      return consts.gamma_at(4) * cum[jr1];
    }
    case GrowthKind::L33: {
      const double W = kernel_window_integral(grid, gvals, wexp, params.k, jr0, jr1, jr1);
      return consts.gamma_at(12) * positive_power(w.r1, -mu) * positive_power(W, e);
    }
    case GrowthKind::L34: {
      const double W = kernel_window_integral(grid, gvals, wexp, params.k, 0, jr0, jr0);
      const double prefactor = std::pow(2.0, -pc) *
                               (1.0 - 1.0 / std::sqrt(params.sigma)) /
                               std::sqrt(consts.beta);
      return prefactor * positive_power(w.r0, -mu) * positive_power(consts.alpha * W, e);
    }
    case GrowthKind::L35: {
      const double W = kernel_window_integral(grid, gvals, wexp, params.k, 0, jr0, jr0);
      const double prefactor = std::pow(2.0, pc) * (params.p - 1.0) / (params.a - params.p + 2.0);
      const double radial = positive_power(w.r0, -mu) - positive_power(w.r1, -mu);
      return prefactor * radial * positive_power(consts.alpha * W, e);
    }
  }
  throw std::logic_error("unreachable growth kind");
}

double check_growth(const WindowSpec& w, const Trace& M, double rhs) {
  return (M.value_at(w.r1) - M.value_at(w.r0)) - rhs;
}

// ---------------------------------------------------------------------------
// window sampling and calibration

namespace {

class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;  // deterministic across platforms
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
};

// snap a continuous radius to an interior node index
Index snap_interior(const RadialGrid& grid, double r) {
  Index j = grid.index_at_or_below(r);
  j = std::max<Index>(j, 1);
  j = std::min<Index>(j, grid.size() - 2);
  return j;
}

// largest j with M_j <= target (bracket search on a non-decreasing trace);
// -1 when target < M_0
Index bracket_below(const Array& M, double target) {
  const double* begin = M.data();
  const double* end = begin + M.size();
  const double* it = std::upper_bound(begin, end, target);
  return static_cast<Index>(it - begin) - 1;
}

std::optional<WindowSpec> propose_window(GrowthKind kind, const CalibrationScenario& sc,
                                         const ProblemParams& params, SampleRng& rng) {
  const RadialGrid& grid = *sc.M.grid;
  const double R0 = grid.front();
  const double Rmax = grid.back();
  const double span = Rmax - R0;

  WindowSpec w;
  w.kind = kind;

  if (kind == GrowthKind::L34 || kind == GrowthKind::L35) {
    const Index j1 = snap_interior(grid, R0 + rng.uniform01() * span);
    const double target = std::sqrt(sc.consts.beta) * sc.M.values[j1];
    const Index j0 = bracket_below(sc.M.values, target);
    if (j0 < 1 || j0 + 1 > j1) return std::nullopt;
    w.r0 = grid.node(j0);
    w.r1 = grid.node(j1);
    return w;
  }

  const Index j0 = snap_interior(grid, R0 + rng.uniform01() * span);
  const double r0 = grid.node(j0);

  double r1_hi = Rmax;
  double r1_lo = r0;
  switch (kind) {
    case GrowthKind::L31: r1_hi = std::min(r1_hi, params.sigma * params.sigma * r0); break;
    case GrowthKind::C31:
    case GrowthKind::C32: r1_hi = std::min(r1_hi, params.sigma * r0); break;
    case GrowthKind::L33: r1_lo = std::sqrt(params.sigma) * r0; break;
    default: break;
  }
  if (!(r1_lo < r1_hi)) return std::nullopt;
  const Index j1 = snap_interior(grid, rng.uniform(r1_lo, r1_hi));
  if (j1 <= j0) return std::nullopt;
  w.r0 = r0;
  w.r1 = grid.node(j1);
  if (kind == GrowthKind::L33 && std::sqrt(params.sigma) * w.r0 > w.r1) return std::nullopt;

  if (kind == GrowthKind::C31) {
    const double gap = w.r1 - w.r0;
    const double lo_limit = std::max(w.r1 / params.sigma, R0);
    const Index jp1 = snap_interior(grid, rng.uniform(std::max(lo_limit, w.r1 - gap), w.r1));
    const double rho1 = grid.node(jp1);
    if (!(rho1 <= w.r1) || !(rho1 > lo_limit)) return std::nullopt;
    const double rho0_lo = std::max(lo_limit, rho1 - gap);
    if (!(rho0_lo < rho1)) return std::nullopt;
    const Index jp0 = snap_interior(grid, rng.uniform(rho0_lo, rho1));
    if (jp0 >= jp1) return std::nullopt;
    if (grid.node(jp0) < rho0_lo) return std::nullopt;
    w.rho0 = grid.node(jp0);
    w.rho1 = grid.node(jp1);
  } else if (kind == GrowthKind::C32) {
    const double gap = w.r1 - w.r0;
    const double lo_limit = std::max(w.r1 / params.sigma, R0);
    const double rho1_lo = std::max(lo_limit, w.r0 - gap);
    if (!(rho1_lo < w.r0)) return std::nullopt;
    const Index jp1 = snap_interior(grid, rng.uniform(rho1_lo, w.r0));
    const double rho1 = grid.node(jp1);
    if (!(rho1 < w.r0) || rho1 < rho1_lo) return std::nullopt;
    if (!(lo_limit < rho1)) return std::nullopt;
    const Index jp0 = snap_interior(grid, rng.uniform(lo_limit, rho1));
    if (jp0 >= jp1) return std::nullopt;
    if (grid.node(jp0) < lo_limit) return std::nullopt;
    w.rho0 = grid.node(jp0);
    w.rho1 = grid.node(jp1);
  }
  return w;
}

}  // namespace

std::vector<WindowSample> sample_windows(GrowthKind kind,
                                         const std::vector<CalibrationScenario>& scenarios,
                                         const ProblemParams& params, int count,
                                         std::uint64_t seed) {
  if (scenarios.empty()) throw invalid_input("sampling: scenario list must be non-empty");
  SampleRng rng(seed);
  std::vector<WindowSample> samples;
  samples.reserve(static_cast<size_t>(count));

  const long max_attempts = 400L * count;
  long attempts = 0;
  int scenario_index = 0;
  while (static_cast<int>(samples.size()) < count && attempts < max_attempts) {
    ++attempts;
    const CalibrationScenario& sc =
        scenarios[static_cast<size_t>(scenario_index) % scenarios.size()];
    ++scenario_index;

    std::optional<WindowSpec> w = propose_window(kind, sc, params, rng);
    if (!w) continue;
    try {
      validate_window(*w, sc.M, sc.f, sc.b, params, sc.consts);
      ComparisonConstants unit = sc.consts;
      for (int i = 1; i <= 12; ++i) unit.set_gamma(i, 1.0);
      WindowSample sample;
      sample.scenario = (scenario_index - 1) % static_cast<int>(scenarios.size());
      sample.rhs_gamma1 = growth_bound_rhs(*w, sc.M, sc.f, sc.b, params, unit);
      sample.rhs = growth_bound_rhs(*w, sc.M, sc.f, sc.b, params, sc.consts);
      sample.window = *w;
      sample.lhs = sc.M.value_at(w->r1) - sc.M.value_at(w->r0);
      samples.push_back(std::move(sample));
    } catch (const precondition_error&) {
      continue;  // proposal violated a data-dependent condition
    }
  }
  return samples;
}

double calibrate_gamma(GrowthKind kind, const std::vector<CalibrationScenario>& scenarios,
                       const ProblemParams& params, int count, std::uint64_t seed) {
  const std::vector<WindowSample> samples = sample_windows(kind, scenarios, params, count, seed);
  if (samples.empty())
    throw calibration_undefined(std::string("no admissible window found for ") +
                                to_string(kind));
  double gamma_hat = std::numeric_limits<double>::infinity();
  bool any_positive = false;
  for (const WindowSample& s : samples) {
    if (s.rhs_gamma1 > 0.0) {
      any_positive = true;
      gamma_hat = std::min(gamma_hat, s.lhs / s.rhs_gamma1);
    }
  }
  if (!any_positive)
    throw calibration_undefined(std::string("every sampled right-hand side is zero for ") +
                                to_string(kind));
  return gamma_hat;
}

}  // namespace radcomp
