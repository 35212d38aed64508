#pragma once

// The explicit level-splitting constant beta and the parametric kernel
// gain alpha, built from twelve positive calibration constants gamma_i.
// The gammas default to 1 and are overridable; gamma_5..gamma_11 are
// carried for completeness but no formula consumes them.

#include <array>
#include <optional>

#include "radcomp/problem.hpp"

namespace radcomp {

struct ComparisonConstants {
  std::array<double, 12> gamma{};  // gamma(i), i = 1..12, stored at [i-1]
  double beta = 0.0;               // in (0, 1)
  double alpha = 0.0;              // > 0

  ComparisonConstants() { gamma.fill(1.0); }

  double gamma_at(int i) const;  // 1-based, throws invalid_input out of range
  void set_gamma(int i, double value);
};

// beta = (min{ 1/(4^{p/(p-1)+2} sigma^{1/2}),
//              (1 - sigma^{-1/2})(a - p + 2) / (8^{p/(p-1)+1}(p - 1)) })^2
double compute_beta(double p, double a, double sigma);

// alpha = (min{ g2 beta^{1/2},
//               g2 / (4^{p/(p-1)+1} sigma^{1/2}),
//               g3 / 4^{p/(p-1)},
//               g12 (a-p+2) / (4^{p/(p-1)} (p-1)),
//               g4 / 2^{p/(p-1)} })^{p-1}
double compute_alpha(double p, double a, double sigma, double beta,
                     const std::array<double, 12>& gamma);

// Builds the constants for one parameter set, honoring optional direct
// overrides of alpha and beta that bypass the formulas.
ComparisonConstants make_constants(const ProblemParams& params,
                                   const std::array<double, 12>& gamma,
                                   std::optional<double> alpha_override = std::nullopt,
                                   std::optional<double> beta_override = std::nullopt);

}  // namespace radcomp
