#include "radcomp/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace radcomp {

double ComparisonConstants::gamma_at(int i) const {
  if (i < 1 || i > 12) throw invalid_input("gamma index must be in 1..12");
  const double g = gamma[static_cast<size_t>(i - 1)];
  if (!(g > 0.0))
    throw invalid_input("gamma" + std::to_string(i) + " must be positive");
  return g;
}

void ComparisonConstants::set_gamma(int i, double value) {
  if (i < 1 || i > 12) throw invalid_input("gamma index must be in 1..12");
  if (!(value > 0.0))
    throw invalid_input("gamma" + std::to_string(i) + " must be positive");
  gamma[static_cast<size_t>(i - 1)] = value;
}

double compute_beta(double p, double a, double sigma) {
  if (!(p > 1.0)) throw invalid_input("beta: requires p > 1");
  if (!(a > p - 2.0)) throw invalid_input("beta: requires a > p - 2");
  if (!(sigma > 1.0)) throw invalid_input("beta: requires sigma > 1");

  const double pc = p / (p - 1.0);
  const double sqrt_sigma = std::sqrt(sigma);
  const double first = 1.0 / (std::pow(4.0, pc + 2.0) * sqrt_sigma);
  const double second =
      (1.0 - 1.0 / sqrt_sigma) * (a - p + 2.0) / (std::pow(8.0, pc + 1.0) * (p - 1.0));
  const double root = std::min(first, second);
  return root * root;
}

double compute_alpha(double p, double a, double sigma, double beta,
                     const std::array<double, 12>& gamma) {
  if (!(p > 1.0)) throw invalid_input("alpha: requires p > 1");
  if (!(a > p - 2.0)) throw invalid_input("alpha: requires a > p - 2");
  if (!(sigma > 1.0)) throw invalid_input("alpha: requires sigma > 1");
  if (!(beta > 0.0 && beta < 1.0)) throw invalid_input("alpha: requires beta in (0,1)");
  for (int i : {2, 3, 4, 12})
    if (!(gamma[static_cast<size_t>(i - 1)] > 0.0))
      throw invalid_input("alpha: gamma" + std::to_string(i) + " must be positive");

  const double g2 = gamma[1];
  const double g3 = gamma[2];
  const double g4 = gamma[3];
  const double g12 = gamma[11];
  const double pc = p / (p - 1.0);
  const double four_pc = std::pow(4.0, pc);

  double root = g2 * std::sqrt(beta);
  root = std::min(root, g2 / (four_pc * 4.0 * std::sqrt(sigma)));
  root = std::min(root, g3 / four_pc);
  root = std::min(root, g12 * (a - p + 2.0) / (four_pc * (p - 1.0)));
  root = std::min(root, g4 / std::pow(2.0, pc));
  return positive_power(root, p - 1.0);
}

ComparisonConstants make_constants(const ProblemParams& params,
                                   const std::array<double, 12>& gamma,
                                   std::optional<double> alpha_override,
                                   std::optional<double> beta_override) {
  ComparisonConstants c;
  c.gamma = gamma;
  for (int i = 1; i <= 12; ++i) c.gamma_at(i);  // positivity check

  c.beta = beta_override ? *beta_override : compute_beta(params.p, params.a, params.sigma);
  if (!(c.beta > 0.0 && c.beta < 1.0))
    throw invalid_input("constants: beta must lie in (0,1)");

  c.alpha = alpha_override ? *alpha_override
                           : compute_alpha(params.p, params.a, params.sigma, c.beta, c.gamma);
  if (!(c.alpha > 0.0)) throw invalid_input("constants: alpha must be positive");
  return c;
}

}  // namespace radcomp
