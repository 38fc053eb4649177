#pragma once

// Rotational surfaces generated by a profile curve:
//   hyperbolic  z = (x1, x2, r sinh v, r cosh v)   (axis: spacelike plane Oe1e2)
//   elliptic    z = (r cos v, r sin v, x1, x2)     (axis: timelike plane Oe3e4)
//   euclidean   z = (x1, x2, r cos v, r sin v)     in Euclidean 4-space
// together with their closed-form invariants and the Chen classification.

#include <array>
#include <optional>
#include <string>

#include "chenrot/curve.hpp"
#include "chenrot/surface.hpp"

namespace chenrot::rotational {

/// Surface patch with partials assembled from the profile jets.
SurfacePatch build(const ProfileCurve& profile);

/// Ambient check used by callers that carry a separate ambient tag.
SurfacePatch build(const ProfileCurve& profile, Ambient expected);

/// Default v-range for grids and meshes: [-3, 3] (hyperbolic), [0, 2 pi]
/// otherwise.
Interval default_v_range(Ambient a);

/// Normal frame assembled from the profile (n1 along the lifted principal
/// normal of the profile, n2 along the lifted binormal-type vector). In the
/// Minkowski ambients <n1,n1> = epsilon and <n2,n2> = -epsilon.
NormalFrame rotational_frame(const ProfileCurve& profile, double u, double v);

/// Coefficients of a normal vector on (n1, n2) of the rotational frame.
struct NormalPair {
  double n1 = 0.0;
  double n2 = 0.0;
};

struct ClosedFormInvariants {
  double u = 0.0;
  double r = 0.0, r1 = 0.0, r2 = 0.0;
  double kappa = 0.0, kappa1 = 0.0;
  int epsilon = 1;
  double L = 0.0, M = 0.0, N = 0.0;
  double k = 0.0, varkappa = 0.0, K = 0.0;
  NormalPair sigma_xx, sigma_xy, sigma_yy, H;
  double H_norm2 = 0.0;
  double sigma_xy_dot_H = 0.0;
  std::optional<double> lambda;  // absent when H is null
  /// r^2 kappa^4 - r''^2 + kappa1^2 (Minkowski) or kappa^4 r^2 - r''^2 - kappa1^2
  /// (Euclidean); zero exactly on non-trivial Chen profiles.
  double chen_condition = 0.0;
  double minimal_condition = 0.0;  // r kappa^2 - epsilon r''
};

/// Throws InflectionPoint when kappa(u) = 0.
ClosedFormInvariants closed_form_invariants(const ProfileCurve& profile, double u);

struct ResidualOptions {
  double tau_offset = 0.0;  // perturbation hook for mutation tests
  double h = 1e-3;          // stencil step for frame derivatives
};

struct DerivativeResiduals {
  static constexpr std::array<const char*, 8> kNames = {
      "D_xbar xbar", "D_xbar ybar", "D_ybar xbar", "D_ybar ybar",
      "D_xbar n1",   "D_ybar n1",   "D_xbar n2",   "D_ybar n2"};
  std::array<double, 8> residual{};
  double tau = 0.0;  // torsion coefficient on n2 used in the checks
  double max() const;
};

/// Residuals of the eight frame derivative formulas of the hyperbolic
/// rotational surface. Rejects other ambients with AmbientMismatch.
DerivativeResiduals derivative_formula_residuals(const ProfileCurve& profile, double u, double v,
                                                 const ResidualOptions& opt = {});

enum class ChenVerdict { MinimalTrivialChen, HyperplanarTrivialChen, NonTrivialChen, NotChen };
const char* to_string(ChenVerdict v);

struct ChenClassification {
  ChenVerdict verdict = ChenVerdict::NotChen;
  double residual_kappa1 = 0.0;      // max |kappa1|
  double min_abs_kappa1 = 0.0;
  double residual_case_i = 0.0;      // max |r kappa^2 - epsilon r''|
  double residual_case_iii = 0.0;    // max |chen_condition|
  double tol = 0.0;
  std::size_t grid = 0;
};

/// Default tolerance 1e-6 (1 + max |r kappa^2|) over the grid.
/// Throws MixedRegime when kappa1 vanishes on part of the grid only.
ChenClassification chen_classify(const ProfileCurve& profile, std::size_t grid,
                                 std::optional<double> tol = std::nullopt);

struct HyperplaneWitness {
  Vec4 normal;
  Vec4 base_point;
  double max_distance = 0.0;
  double max_normal_derivative = 0.0;
};

/// Hyperplane containing a surface whose profile has kappa1 = 0: orthogonal
/// to the (constant) n2 field. Throws PreconditionViolation if kappa1 does not
/// vanish on the grid and NotHyperplanar if the deviation exceeds `tol`.
HyperplaneWitness hyperplane_witness(const ProfileCurve& profile, std::size_t grid, double tol = 1e-8);

}  // namespace chenrot::rotational
