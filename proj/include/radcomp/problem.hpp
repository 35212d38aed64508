#pragma once

// Problem data for the radial comparison computation: parameter set,
// source nonlinearity f(r,t), drift coefficient b(r), the radial grid with
// its cumulative drift, and per-node traces.
//
// All types are immutable after construction and safe to share across
// threads.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "radcomp/types.hpp"

namespace radcomp {

// Scalar parameters of one scenario.  The interval of interest is
// [R0, Rmax] with Rmax the finite truncation of the (possibly infinite)
// right endpoint.
struct ProblemParams {
  double p = 2.0;       // principal exponent, > 1
  double a = 1.0;       // radial weight exponent, > p - 2
  double k = 1.0;       // drift gain, > 0
  double sigma = 4.0;   // shell ratio, > 1
  int n = 3;            // space dimension, >= 2
  double C1 = 1.0;      // lower ellipticity bound, > 0
  double C2 = 1.0;      // upper ellipticity bound, >= C1
  double R0 = 0.0;      // inner radius, >= 0
  double Rmax = 1.0;    // outer truncation radius, > R0
  double blowup_cap = 1e12;

  // Throws invalid_input naming the violated constraint.
  void validate() const;

  double conjugate() const { return 1.0 / (p - 1.0); }       // 1/(p-1)
  double weight_exponent() const { return 1.0 + a; }          // 1+a, always > 0
  double decay_exponent() const { return (a - p + 2.0) / (p - 1.0); }
};

// Source term f(r,t), non-negative, non-decreasing and left-continuous in
// t.  Closed forms are kept as callables; tabulated data interpolates
// linearly in r and as a left-continuous step in t (jump points evaluate
// to the left limit).
class NonlinearityF {
 public:
  enum class Kind { closed_form, tabulated };

  static NonlinearityF zero();
  static NonlinearityF constant(double c);
  // c * t^q
  static NonlinearityF power(double c, double q);
  static NonlinearityF from_function(std::function<double(double, double)> fn,
                                     std::string description = "custom");
  // values(i, j) = f(radii[i], levels[j]); radii and levels strictly increasing.
  static NonlinearityF tabulated(Array radii, Array levels, Eigen::MatrixXd values);

  double operator()(double r, double t) const;

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }

 private:
  NonlinearityF() = default;

  Kind kind_ = Kind::closed_form;
  std::string description_;
  std::function<double(double, double)> fn_;
  // tabulated representation
  Array radii_;
  Array levels_;
  Eigen::MatrixXd values_;
};

// Drift coefficient b(r) >= 0, locally bounded on [R0, Rmax].  An optional
// uniform floor delta is added to every evaluation.
class DriftB {
 public:
  static DriftB zero();
  static DriftB constant(double c);
  // c * r^q
  static DriftB power(double c, double q);
  static DriftB from_function(std::function<double(double)> fn,
                              std::string description = "custom");
  // linear interpolation between (radii[i], values[i]) samples
  static DriftB tabulated(Array radii, Array values);

  DriftB with_floor(double delta) const;

  double operator()(double r) const;
  double floor() const { return delta_; }
  const std::string& description() const { return description_; }

 private:
  DriftB() = default;

  std::string description_;
  std::function<double(double)> fn_;
  Array radii_;
  Array values_;
  bool is_table_ = false;
  double delta_ = 0.0;
};

// Strictly increasing node sequence r_0 = R0 < ... < r_N = Rmax together
// with the cumulative drift B_j = integral of b over [R0, r_j] (composite
// trapezoid).  Only differences of B ever enter downstream formulas.
class RadialGrid {
 public:
  RadialGrid(Array nodes, const DriftB& b);
  // Explicit cumulative drift (non-decreasing).  Factories always produce
  // B_0 = 0; a constant offset is harmless since only differences enter.
  RadialGrid(Array nodes, Array cumulative_drift);

  static std::shared_ptr<const RadialGrid> uniform(double R0, double Rmax,
                                                   Index node_count,
                                                   const DriftB& b = DriftB::zero());

  const Array& nodes() const { return nodes_; }
  const Array& cumulative_drift() const { return cumdrift_; }
  Index size() const { return nodes_.size(); }
  double node(Index j) const { return nodes_[j]; }
  double drift(Index j) const { return cumdrift_[j]; }
  double front() const { return nodes_[0]; }
  double back() const { return nodes_[nodes_.size() - 1]; }

  // Largest node index j with r_j <= r (clamped to [0, N]).
  Index index_at_or_below(double r) const;
  // Smallest node index j with r_j >= r (clamped to [0, N]).
  Index index_at_or_above(double r) const;

 private:
  Array nodes_;
  Array cumdrift_;
};

enum class TraceLabel { u, M, m, kernel, residual, bound };

const char* to_string(TraceLabel label);

// Per-node samples of a radial function.
struct Trace {
  std::shared_ptr<const RadialGrid> grid;
  Array values;
  TraceLabel label = TraceLabel::u;

  Trace() = default;
  Trace(std::shared_ptr<const RadialGrid> g, Array v, TraceLabel lab);

  Index size() const { return values.size(); }

  // Previous-node step value: the sample at the largest node <= r.
  double value_at(double r) const;
  // Discrete right limit at r: the sample at the first node strictly
  // greater than r (the last node's value past the end).
  double value_right_of(double r) const;

  bool non_decreasing() const;

  // Throws invalid_input if label-specific constraints fail
  // (M non-decreasing; m non-decreasing with positive first value).
  void validate() const;
};

// (r,t)-sampled coefficient field on grid nodes x level set, the raw data
// the shell construction consumes.
struct RadialField {
  Array levels;            // strictly increasing level samples
  Eigen::MatrixXd values;  // values(i, j) = field(node_i, level_j)
};

}  // namespace radcomp
