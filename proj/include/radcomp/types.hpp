#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace radcomp {

using Array = Eigen::ArrayXd;
using ArrayRef = Eigen::Ref<const Eigen::ArrayXd>;
using Index = Eigen::Index;

// Raised when a value violates a documented parameter domain.
struct invalid_input : std::invalid_argument {
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a shell window [r/sigma, sigma*r] contains no grid node.
struct window_error : std::runtime_error {
  explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a growth-estimate window violates one of its admissibility
// conditions; the message names the violated condition.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a manufactured profile is not convex enough to act as an
// equality solution (negative divergence somewhere on the grid).
struct not_admissible : std::runtime_error {
  explicit not_admissible(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the comparison function blows up before Rmax while the
// reference envelope stays finite.
struct comparison_failure : std::runtime_error {
  explicit comparison_failure(const std::string& what) : std::runtime_error(what) {}
};

// Raised when every sampled window produced a zero right-hand side, so no
// finite calibration constant exists.
struct calibration_undefined : std::runtime_error {
  explicit calibration_undefined(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed scenario configuration files; carries the 1-based
// line number of the offending line (0 when not line-specific).
struct config_error : std::runtime_error {
  int line;
  config_error(const std::string& what, int line_number = 0)
      : std::runtime_error(what), line(line_number) {}
};

// x^e for x >= 0 with exact fast paths for the exponents that occur as
// 1/(p-1).  The fast paths keep the map strictly monotone in x, which the
// monotone-iteration invariant relies on.
inline double positive_power(double x, double e) {
  if (e == 1.0) return x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 2.0) return x * x;
  return std::pow(x, e);
}

// sign(x) * |x|^e, the odd power used for fluxes |w|^{p-2} w.
inline double signed_power(double x, double e) {
  return x < 0.0 ? -positive_power(-x, e) : positive_power(x, e);
}

}  // namespace radcomp
