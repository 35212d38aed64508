#include "radcomp/picard.hpp"

#include <cmath>
#include <utility>

namespace radcomp {

Trace picard_step(const Trace& m_prev, const NonlinearityF& f, const ProblemParams& params,
                  const ComparisonConstants& consts) {
  if (!(m_prev.values[0] > 0.0)) throw invalid_input("picard: m_prev must start positive");
  if (!m_prev.non_decreasing()) throw invalid_input("picard: m_prev must be non-decreasing");

  const double M0 = m_prev.values[0];
  Trace bound = lower_bound_integral(m_prev, f, params, consts);
  Array next = M0 + bound.values;
  return Trace(m_prev.grid, std::move(next), TraceLabel::m);
}

PicardResult solve_comparison_function(const NonlinearityF& f, const ProblemParams& params,
                                       const ComparisonConstants& consts,
                                       std::shared_ptr<const RadialGrid> grid, double M0,
                                       const PicardOptions& options) {
  if (!(M0 > 0.0)) throw invalid_input("picard: requires M0 > 0");
  if (!(options.tol > 0.0)) throw invalid_input("picard: requires tol > 0");
  if (options.max_iter < 1) throw invalid_input("picard: requires max_iter >= 1");

  const Index n = grid->size();
  PicardResult result;
  result.m = Trace(grid, Array::Constant(n, M0), TraceLabel::m);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    Trace next = picard_step(result.m, f, params, consts);
    result.iterations = iter;

    double delta = 0.0;
    double sup = 0.0;
    for (Index j = 0; j < n; ++j) {
      // exact monotone-iteration invariant, no tolerance
      if (next.values[j] < result.m.values[j])
        throw std::logic_error("picard: monotone iteration violated");
      delta = std::max(delta, next.values[j] - result.m.values[j]);
      sup = std::max(sup, next.values[j]);
    }
    result.final_delta = delta;
    result.m = std::move(next);

    if (sup > params.blowup_cap) {
      Index first = 0;
      while (first < n && !(result.m.values[first] > params.blowup_cap)) ++first;
      BlowupInfo info;
      info.first_offending_node = first;
      info.radius_estimate = first == 0
                                 ? grid->node(0)
                                 : 0.5 * (grid->node(first - 1) + grid->node(first));
      result.blowup = info;
      return result;
    }

    if (delta <= options.tol * (1.0 + sup)) {
      result.converged = true;
      return result;
    }
  }
  return result;  // max_iter reached: converged stays false
}

}  // namespace radcomp
