#pragma once

// Profile curves realizing the rotational Chen cases: non-trivial Chen
// profiles from a prescribed radius r(u), constant-k profiles, and minimal
// planar profiles. Outputs are tabulated at the integrator step and checked
// afterwards by re-evaluating the tabulated curve.

#include <optional>
#include <string>
#include <vector>

#include "chenrot/curve.hpp"
#include "chenrot/rspec.hpp"

namespace chenrot {

enum class ConstructTarget { Chen, ConstantK, Minimal };
const char* to_string(ConstructTarget t);
ConstructTarget parse_construct_target(const std::string& s);

/// Initial data for the angle reduction. x1' = rho cos(theta), x2' = rho
/// sin(theta) (hyperbolic, Euclidean) or x1' = m cosh(theta), x2' = m
/// sinh(theta) (elliptic).
struct AngleStart {
  double theta0 = 0.0;
  double x1_0 = 0.0;
  double x2_0 = 0.0;
};

struct ConstructOptions {
  Interval domain{0.0, 2.0};
  double step = 1e-3;
  int branch = 1;  // sign of theta'
  AngleStart start;
};

/// Coefficients and roots of the pointwise quadratic a w^2 + b w + c = 0 in
/// w = theta'^2 of the Chen condition.
struct ChenQuadratic {
  double a = 0.0, b = 0.0, c = 0.0;
  double accel_offset = 0.0, accel_slope = 0.0;  // <t',t'> = offset + slope w
  std::vector<double> roots;                     // real roots, ascending
  double value(double w) const { return (a * w + b) * w + c; }
  double scale() const { return std::abs(a) + std::abs(b) + std::abs(c); }
};

/// Builds the quadratic at one parameter value. Throws OutOfDomain when
/// r <= 0 or when |r'| >= 1 in the elliptic and Euclidean ambients.
ChenQuadratic chen_quadratic(Ambient ambient, const RJet& r);

/// Admissible roots: w >= 0 with <t',t'> bounded away from zero.
std::vector<double> admissible_roots(const ChenQuadratic& q);

/// One contiguous constructed profile.
struct ConstructedPiece {
  ProfileCurve profile;
  std::vector<double> theta;        // integrated angle at the samples
  std::vector<double> theta_prime;  // branch * sqrt(w) or kappa1 / rho^2
  double residual_condition = 0.0;
  double residual_unit_speed = 0.0;
  double worst_u = 0.0;  // where residual_condition is attained
};

struct ConstructionReport {
  ConstructTarget target = ConstructTarget::Chen;
  Ambient ambient = Ambient::Hyperbolic;
  int branch = 1;
  std::vector<ConstructedPiece> pieces;
  std::vector<Interval> failures;     // excised parameter intervals
  double residual_condition = 0.0;    // max over pieces
  double worst_u = 0.0;
  double residual_unit_speed = 0.0;   // max over pieces
  double max_root_residual = 0.0;     // quadratic value at the chosen roots (Chen)
  double max_abs_lambda = 0.0;        // general pipeline, v = 0, where H is not null
  double max_H_norm = 0.0;            // general pipeline, Euclidean norm of H
  std::optional<double> k_target;
  double k_mean = 0.0, k_std = 0.0;
  double K_mean = 0.0, K_std = 0.0;
  bool constant_K = false;
  std::optional<double> truncated_at;  // minimal target: end reached before blow-up

  const ProfileCurve& profile() const { return pieces.front().profile; }
};

/// Non-trivial Chen profile with prescribed r. Non-admissible stretches are
/// excised; throws NoAdmissibleRoot when nothing is left.
ConstructionReport construct_chen_profile(Ambient ambient, const RSpec& r, const ConstructOptions& opt = {});

/// Profile with k = k0 < 0 via kappa1 = branch r sqrt(-k0). Throws
/// DegenerateAcceleration when <t',t'> vanishes on the domain.
ConstructionReport construct_constant_k_profile(Ambient ambient, const RSpec& r, double k0,
                                                const ConstructOptions& opt = {});

/// Planar minimal profile (x2 = 0) from r(lo) = r0, r'(lo) = r0p:
///   elliptic, Euclidean  r r'' = 1 - r'^2
///   hyperbolic           r r'' = -(1 + r'^2)
/// Integration stops before r -> 0 or |r'| -> 1 (truncated_at is set); throws
/// BlowUp when fewer than the interpolation stencil of samples remain.
ConstructionReport construct_minimal_profile(Ambient ambient, double r0, double r0p, const ConstructOptions& opt = {});

}  // namespace chenrot
