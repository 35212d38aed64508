#pragma once

// Right-hand sides of the growth estimates for the envelope M over radius
// windows, plus empirical calibration of the gamma constants.  Each kind
// carries its own admissibility conditions; violations raise
// precondition_error naming the failed condition.  Every right-hand side
// is homogeneous of degree one in its gamma, so the calibrated constant is
// the infimum over admissible windows of lhs / rhs-at-gamma-one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radcomp/quadrature.hpp"

namespace radcomp {

enum class GrowthKind { L31, C31, C32, L32, L33, L34, L35 };

const char* to_string(GrowthKind kind);
GrowthKind parse_growth_kind(const std::string& name);  // "L3.1", "C3.1", ...
inline constexpr GrowthKind all_growth_kinds[] = {
    GrowthKind::L31, GrowthKind::C31, GrowthKind::C32, GrowthKind::L32,
    GrowthKind::L33, GrowthKind::L34, GrowthKind::L35};

// Radius window for one estimate.  rho0/rho1 are required for C31 and C32;
// probe is the evaluation radius s of L31 (defaults to min(r1, sigma*r0)).
// lambda (the drift infimum over the kind's interval) is filled in during
// validation.
struct WindowSpec {
  GrowthKind kind = GrowthKind::L32;
  double r0 = 0.0;
  double r1 = 0.0;
  std::optional<double> rho0;
  std::optional<double> rho1;
  std::optional<double> probe;
  double lambda = 0.0;
};

// Checks the kind-specific window conditions against M (previous-node step
// interpolation; the discrete right limit at a node is the next node's
// value) and computes lambda.  Throws precondition_error on violation.
void validate_window(WindowSpec& w, const Trace& M, const NonlinearityF& f, const DriftB& b,
                     const ProblemParams& params, const ComparisonConstants& consts);

// Numeric right-hand side of the selected estimate, using the gamma of
// matching index (L31 -> gamma1, C31 -> gamma2, C32 -> gamma3,
// L32 -> gamma4, L33 -> gamma12; L34/L35 carry explicit constants only).
// Validates the window first.
double growth_bound_rhs(const WindowSpec& w, const Trace& M, const NonlinearityF& f,
                        const DriftB& b, const ProblemParams& params,
                        const ComparisonConstants& consts);

// margin = (M(r1) - M(r0)) - rhs; non-negative means the estimate holds.
double check_growth(const WindowSpec& w, const Trace& M, double rhs);

// One manufactured scenario for calibration: envelope, admissible pair and
// the constants (alpha, beta) it was built with.
struct CalibrationScenario {
  Trace M;
  NonlinearityF f;
  DriftB b;
  ComparisonConstants consts;
};

struct WindowSample {
  int scenario = 0;
  WindowSpec window;
  double lhs = 0.0;         // M(r1) - M(r0)
  double rhs = 0.0;         // at the scenario's gamma
  double rhs_gamma1 = 0.0;  // at gamma = 1
};

// Draws admissible windows for one kind, round-robin over the scenarios,
// until `count` samples are accepted (deterministic in seed).  Radii are
// drawn continuously and snapped to grid nodes, so samples are stable
// under grid refinement.
std::vector<WindowSample> sample_windows(GrowthKind kind,
                                         const std::vector<CalibrationScenario>& scenarios,
                                         const ProblemParams& params, int count,
                                         std::uint64_t seed);

// Largest gamma-hat such that the estimate holds across all sampled
// windows of all scenarios: min over samples of lhs / rhs-at-gamma-one.
// Throws calibration_undefined when every sampled rhs is zero or no
// admissible window exists.
double calibrate_gamma(GrowthKind kind, const std::vector<CalibrationScenario>& scenarios,
                       const ProblemParams& params, int count = 200,
                       std::uint64_t seed = 0x5eed);

}  // namespace radcomp
