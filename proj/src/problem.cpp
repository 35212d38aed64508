#include "radcomp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace radcomp {

void ProblemParams::validate() const {
  if (!(p > 1.0)) throw invalid_input("params: requires p > 1");
  if (!(a > p - 2.0)) throw invalid_input("params: requires a > p - 2");
  if (!(k > 0.0)) throw invalid_input("params: requires k > 0");
  if (!(sigma > 1.0)) throw invalid_input("params: requires sigma > 1");
  if (n < 2) throw invalid_input("params: requires n >= 2");
  if (!(C1 > 0.0)) throw invalid_input("params: requires C1 > 0");
  if (!(C2 >= C1)) throw invalid_input("params: requires C2 >= C1");
  if (!(R0 >= 0.0)) throw invalid_input("params: requires R0 >= 0");
  if (!(Rmax > R0) || !std::isfinite(Rmax))
    throw invalid_input("params: requires R0 < Rmax < infinity");
  if (!(blowup_cap > 0.0)) throw invalid_input("params: requires blowup_cap > 0");
}

// ---------------------------------------------------------------------------
// NonlinearityF

NonlinearityF NonlinearityF::zero() { return constant(0.0); }

NonlinearityF NonlinearityF::constant(double c) {
  if (c < 0.0) throw invalid_input("f: constant must be non-negative");
  NonlinearityF f;
  f.description_ = "constant";
  f.fn_ = [c](double, double) { return c; };
  return f;
}

NonlinearityF NonlinearityF::power(double c, double q) {
  if (c < 0.0) throw invalid_input("f: power coefficient must be non-negative");
  if (q < 0.0) throw invalid_input("f: power exponent must be non-negative");
  NonlinearityF f;
  f.description_ = "power";
  f.fn_ = [c, q](double, double t) { return c * positive_power(t, q); };
  return f;
}

NonlinearityF NonlinearityF::from_function(std::function<double(double, double)> fn,
                                           std::string description) {
  NonlinearityF f;
  f.description_ = std::move(description);
  f.fn_ = std::move(fn);
  return f;
}

NonlinearityF NonlinearityF::tabulated(Array radii, Array levels, Eigen::MatrixXd values) {
  if (radii.size() < 1 || levels.size() < 1)
    throw invalid_input("f table: needs at least one radius and one level");
  if (values.rows() != radii.size() || values.cols() != levels.size())
    throw invalid_input("f table: value matrix shape mismatch");
  for (Index i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw invalid_input("f table: radii must increase");
  for (Index j = 1; j < levels.size(); ++j)
    if (!(levels[j] > levels[j - 1])) throw invalid_input("f table: levels must increase");
  NonlinearityF f;
  f.kind_ = Kind::tabulated;
  f.description_ = "table";
  f.radii_ = std::move(radii);
  f.levels_ = std::move(levels);
  f.values_ = std::move(values);
  return f;
}

namespace {

// Index of the column the left-continuous step assigns to level t:
// the first tabulated level >= t, clamped to the last column above the
// table (so f(., t-0) = f(., t) at every jump point).
Index left_continuous_column(const Array& levels, double t) {
  const double* begin = levels.data();
  const double* end = begin + levels.size();
  const double* it = std::lower_bound(begin, end, t);
  if (it == end) return levels.size() - 1;
  return static_cast<Index>(it - begin);
}

// Linear interpolation weights in r, clamped at the table edges.
struct RadialInterp {
  Index lo, hi;
  double w_hi;
};

RadialInterp radial_interp(const Array& radii, double r) {
  const Index n = radii.size();
  if (r <= radii[0]) return {0, 0, 0.0};
  if (r >= radii[n - 1]) return {n - 1, n - 1, 0.0};
  const double* begin = radii.data();
  const double* it = std::upper_bound(begin, begin + n, r);
  Index hi = static_cast<Index>(it - begin);
  Index lo = hi - 1;
  double w = (r - radii[lo]) / (radii[hi] - radii[lo]);
  return {lo, hi, w};
}

}  // namespace

double NonlinearityF::operator()(double r, double t) const {
  if (kind_ == Kind::closed_form) return fn_(r, t);
  const Index col = left_continuous_column(levels_, t);
  const RadialInterp ri = radial_interp(radii_, r);
  const double lo = values_(ri.lo, col);
  const double hi = values_(ri.hi, col);
  return lo + ri.w_hi * (hi - lo);
}

// ---------------------------------------------------------------------------
// DriftB

DriftB DriftB::zero() { return constant(0.0); }

DriftB DriftB::constant(double c) {
  if (c < 0.0) throw invalid_input("b: constant must be non-negative");
  DriftB b;
  b.description_ = "constant";
  b.fn_ = [c](double) { return c; };
  return b;
}

DriftB DriftB::power(double c, double q) {
  if (c < 0.0) throw invalid_input("b: power coefficient must be non-negative");
  if (q < 0.0) throw invalid_input("b: power exponent must be non-negative");
  DriftB b;
  b.description_ = "power";
  b.fn_ = [c, q](double r) { return c * positive_power(r, q); };
  return b;
}

DriftB DriftB::from_function(std::function<double(double)> fn, std::string description) {
  DriftB b;
  b.description_ = std::move(description);
  b.fn_ = std::move(fn);
  return b;
}

DriftB DriftB::tabulated(Array radii, Array values) {
  if (radii.size() != values.size() || radii.size() < 1)
    throw invalid_input("b table: needs matching radius/value columns");
  for (Index i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw invalid_input("b table: radii must increase");
  DriftB b;
  b.description_ = "table";
  b.is_table_ = true;
  b.radii_ = std::move(radii);
  b.values_ = std::move(values);
  return b;
}

DriftB DriftB::with_floor(double delta) const {
  if (delta < 0.0) throw invalid_input("b: floor must be non-negative");
  DriftB b = *this;
  b.delta_ = delta;
  return b;
}

double DriftB::operator()(double r) const {
  double raw;
  if (is_table_) {
    const RadialInterp ri = radial_interp(radii_, r);
    raw = values_[ri.lo] + ri.w_hi * (values_[ri.hi] - values_[ri.lo]);
  } else {
    raw = fn_(r);
  }
  return raw + delta_;
}

// ---------------------------------------------------------------------------
// RadialGrid

RadialGrid::RadialGrid(Array nodes, const DriftB& b) : nodes_(std::move(nodes)) {
  const Index n = nodes_.size();
  if (n < 3) throw invalid_input("grid: needs at least 3 nodes");
  for (Index j = 1; j < n; ++j)
    if (!(nodes_[j] > nodes_[j - 1])) throw invalid_input("grid: nodes must strictly increase");

  cumdrift_.resize(n);
  cumdrift_[0] = 0.0;
  double b_prev = b(nodes_[0]);
  if (b_prev < 0.0) throw invalid_input("grid: b must be non-negative");
  for (Index j = 1; j < n; ++j) {
    const double b_cur = b(nodes_[j]);
    if (b_cur < 0.0) throw invalid_input("grid: b must be non-negative");
    const double h = nodes_[j] - nodes_[j - 1];
    cumdrift_[j] = cumdrift_[j - 1] + 0.5 * h * (b_prev + b_cur);
    b_prev = b_cur;
  }
}

RadialGrid::RadialGrid(Array nodes, Array cumulative_drift)
    : nodes_(std::move(nodes)), cumdrift_(std::move(cumulative_drift)) {
  const Index n = nodes_.size();
  if (n < 3) throw invalid_input("grid: needs at least 3 nodes");
  if (cumdrift_.size() != n) throw invalid_input("grid: drift length mismatch");
  for (Index j = 1; j < n; ++j) {
    if (!(nodes_[j] > nodes_[j - 1])) throw invalid_input("grid: nodes must strictly increase");
    if (cumdrift_[j] < cumdrift_[j - 1])
      throw invalid_input("grid: cumulative drift must be non-decreasing");
  }
}

std::shared_ptr<const RadialGrid> RadialGrid::uniform(double R0, double Rmax,
                                                      Index node_count, const DriftB& b) {
  if (node_count < 3) throw invalid_input("grid: needs at least 3 nodes");
  if (!(Rmax > R0)) throw invalid_input("grid: requires R0 < Rmax");
  Array nodes(node_count);
  const double h = (Rmax - R0) / static_cast<double>(node_count - 1);
  for (Index j = 0; j < node_count; ++j) nodes[j] = R0 + h * static_cast<double>(j);
  nodes[node_count - 1] = Rmax;
  return std::make_shared<RadialGrid>(std::move(nodes), b);
}

Index RadialGrid::index_at_or_below(double r) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const double* it = std::upper_bound(begin, end, r);
  if (it == begin) return 0;
  return static_cast<Index>(it - begin) - 1;
}

Index RadialGrid::index_at_or_above(double r) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const double* it = std::lower_bound(begin, end, r);
  if (it == end) return nodes_.size() - 1;
  return static_cast<Index>(it - begin);
}

// ---------------------------------------------------------------------------
// Trace

const char* to_string(TraceLabel label) {
  switch (label) {
    case TraceLabel::u: return "u";
    case TraceLabel::M: return "M";
    case TraceLabel::m: return "m";
    case TraceLabel::kernel: return "kernel";
    case TraceLabel::residual: return "residual";
    case TraceLabel::bound: return "bound";
  }
  return "?";
}

Trace::Trace(std::shared_ptr<const RadialGrid> g, Array v, TraceLabel lab)
    : grid(std::move(g)), values(std::move(v)), label(lab) {
  if (!grid) throw invalid_input("trace: null grid");
  if (values.size() != grid->size())
    throw invalid_input("trace: length must equal grid length");
}

double Trace::value_at(double r) const { return values[grid->index_at_or_below(r)]; }

double Trace::value_right_of(double r) const {
  Index j = grid->index_at_or_below(r);
  if (j + 1 < values.size()) ++j;
  return values[j];
}

bool Trace::non_decreasing() const {
  for (Index j = 1; j < values.size(); ++j)
    if (values[j] < values[j - 1]) return false;
  return true;
}

void Trace::validate() const {
  if (values.size() != grid->size())
    throw invalid_input("trace: length must equal grid length");
  switch (label) {
    case TraceLabel::M:
      if (!non_decreasing()) throw invalid_input("trace: M must be non-decreasing");
      break;
    case TraceLabel::m:
      if (!(values[0] > 0.0)) throw invalid_input("trace: m must start positive");
      if (!non_decreasing()) throw invalid_input("trace: m must be non-decreasing");
      break;
    default:
      break;
  }
}

}  // namespace radcomp
