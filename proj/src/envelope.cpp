#include "radcomp/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace radcomp {

ValidationReport validate_nonlinearity(const NonlinearityF& f, const RadialGrid& grid,
                                       const Array& levels) {
  if (levels.size() == 0) throw invalid_input("validate: level list must be non-empty");
  for (Index i = 0; i < levels.size(); ++i)
    if (!(levels[i] > 0.0)) throw invalid_input("validate: levels must be positive");
  for (Index i = 1; i < levels.size(); ++i)
    if (!(levels[i] > levels[i - 1]))
      throw invalid_input("validate: levels must strictly increase");

  ValidationReport report;
  for (Index j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    double prev = f(r, levels[0]);
    if (!(prev >= 0.0) || !std::isfinite(prev)) {
      report.pass = false;
      report.violation = ValidationReport::Violation::negative_value;
      report.r = r;
      report.t1 = report.t2 = levels[0];
      return report;
    }
    for (Index i = 1; i < levels.size(); ++i) {
      const double cur = f(r, levels[i]);
      if (!(cur >= 0.0) || !std::isfinite(cur)) {
        report.pass = false;
        report.violation = ValidationReport::Violation::negative_value;
        report.r = r;
        report.t1 = report.t2 = levels[i];
        return report;
      }
      if (cur < prev) {
        report.pass = false;
        report.violation = ValidationReport::Violation::monotonicity;
        report.r = r;
        report.t1 = levels[i];
        report.t2 = levels[i - 1];
        return report;
      }
      prev = cur;
    }
  }
  return report;
}

Trace monotone_envelope(const Trace& sphere_sup) {
  Array env = sphere_sup.values;
  for (Index j = 1; j < env.size(); ++j) env[j] = std::max(env[j], env[j - 1]);
  return Trace(sphere_sup.grid, std::move(env), TraceLabel::M);
}

std::pair<Index, Index> shell_window(const RadialGrid& grid, double r, double sigma) {
  const double lo = std::max(r / sigma, grid.front());
  const double hi = std::min(r * sigma, grid.back());
  const Index first = grid.index_at_or_above(lo);
  const Index last = grid.index_at_or_below(hi);
  if (first > last || grid.node(first) < lo || grid.node(last) > hi)
    throw window_error("shell window around r=" + std::to_string(r) +
                       " contains no grid node");
  return {first, last};
}

std::pair<NonlinearityF, DriftB> shell_envelope(const RadialField& coeff_c,
                                                const Array& coeff_bsum,
                                                const ProblemParams& params,
                                                const RadialGrid& grid) {
  const Index n = grid.size();
  const Index nlev = coeff_c.levels.size();
  if (coeff_c.values.rows() != n || coeff_c.values.cols() != nlev)
    throw invalid_input("shell: coeff_c shape must be nodes x levels");
  if (coeff_bsum.size() != n) throw invalid_input("shell: coeff_bsum length mismatch");
  if ((coeff_c.values.array() < 0.0).any())
    throw invalid_input("shell: coeff_c must be non-negative");
  for (Index i = 0; i < n; ++i)
    for (Index l = 1; l < nlev; ++l)
      if (coeff_c.values(i, l) < coeff_c.values(i, l - 1))
        throw invalid_input("shell: coeff_c must be non-decreasing in the level");

  Eigen::MatrixXd fmin(n, nlev);
  Array bmax(n);
  for (Index j = 0; j < n; ++j) {
    const auto [first, last] = shell_window(grid, grid.node(j), params.sigma);
    for (Index l = 0; l < nlev; ++l)
      fmin(j, l) = coeff_c.values.col(l).segment(first, last - first + 1).minCoeff();
    bmax[j] = coeff_bsum.segment(first, last - first + 1).maxCoeff();
  }

  NonlinearityF f = NonlinearityF::tabulated(grid.nodes(), coeff_c.levels, std::move(fmin));
  DriftB b = DriftB::tabulated(grid.nodes(), std::move(bmax));
  return {std::move(f), std::move(b)};
}

}  // namespace radcomp
