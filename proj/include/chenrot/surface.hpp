#pragma once

// Pointwise invariants of a spacelike parametric surface z(u, v) in the
// Minkowski 4-space (or the Euclidean comparison ambient): fundamental
// forms, the Weingarten-type invariants k and varkappa, Gauss curvature,
// mean curvature vector, the Chen invariant lambda and the allied mean
// curvature vector.

#include <functional>
#include <optional>

#include "chenrot/curve.hpp"
#include "chenrot/mink.hpp"

namespace chenrot {

struct SurfaceJet {
  Vec4 z, zu, zv, zuu, zuv, zvv;
};

struct SurfacePatch {
  Signature signature = Signature::Minkowski;
  std::function<SurfaceJet(double, double)> eval;
  Interval u_domain;
  Interval v_domain{-INFINITY, INFINITY};

  bool contains(double u, double v) const { return u_domain.contains(u) && v_domain.contains(v); }
  /// Throws OutOfDomain outside the parameter rectangle.
  SurfaceJet jet(double u, double v) const;
};

/// Patch whose partials come from 4th-order central differences of `map`.
SurfacePatch make_stencil_patch(Signature sig, std::function<Vec4(double, double)> map, Interval u_domain,
                                Interval v_domain, double h = 1e-3);

struct FirstFundamental {
  double E = 0.0, F = 0.0, G = 0.0, W = 0.0;
};

struct SecondTensorCoeffs {
  // c_ij^k = <z_ij, n_k>; index order in the names is i, j, k.
  double c111 = 0.0, c121 = 0.0, c221 = 0.0;
  double c112 = 0.0, c122 = 0.0, c222 = 0.0;

  /// (i, j) in {1, 2}, k in {1, 2}.
  double at(int i, int j, int k) const;
};

struct SecondFundamental {
  double L = 0.0, M = 0.0, N = 0.0;
};

struct GammaInvariants {
  double k = 0.0;
  double varkappa = 0.0;
};

struct TangentFrames {
  Vec4 xbar, ybar;  // orthonormal, xbar along z_u
  Vec4 x, y;        // principal tangents
};

enum class PointClass { Flat, Elliptic, Hyperbolic, Parabolic };
const char* to_string(PointClass p);

enum class MeanCurvatureKind { Zero, Spacelike, Timelike, Lightlike };
const char* to_string(MeanCurvatureKind m);

/// Throws NotSpacelike unless E > 0, G > 0 and EG - F^2 > 0.
FirstFundamental first_form(const SurfaceJet& j, Signature sig);
FirstFundamental first_form(const SurfacePatch& patch, double u, double v);

SecondTensorCoeffs second_tensor(const SurfaceJet& j, const NormalFrame& frame);

/// L = (2/W)|c111 c121; c112 c122|, M = (1/W)|c111 c221; c112 c222|,
/// N = (2/W)|c121 c221; c122 c222|.
SecondFundamental second_form(const SecondTensorCoeffs& c, double W);

/// k = (LN - M^2)/(EG - F^2), varkappa = (EN + GL - 2FM)/(2(EG - F^2)).
GammaInvariants gamma_invariants(const FirstFundamental& I, const SecondFundamental& II);

/// Gauss curvature from the metric alone (Brioschi formula with E, F, G
/// differentiated by 4th-order stencils of width 4h). Throws
/// StencilOutOfDomain when the stencil leaves the patch.
double gauss_curvature(const SurfacePatch& patch, double u, double v, double h = 2e-3);

/// Gauss curvature from the Gauss equation, (<s11,s22> - <s12,s12>)/W^2.
double gauss_curvature_extrinsic(const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame);

/// Normal part sigma(z_i, z_j) of the second partial z_ij.
Vec4 sigma_coordinate(const SecondTensorCoeffs& c, const NormalFrame& frame, int i, int j);

/// Second fundamental tensor on arbitrary tangent vectors X, Y.
Vec4 sigma(const SurfaceJet& j, const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame,
           const Vec4& X, const Vec4& Y);

/// H = (1/2) trace_g sigma.
Vec4 mean_curvature(const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame);

/// Zero-vector threshold for H at a jet: 1e-9 (1 + |z_uu| + |z_vv|).
double minimal_tolerance(const SurfaceJet& j);

MeanCurvatureKind mean_curvature_kind(const Vec4& H, Signature sig, double zero_tol);

/// lambda = <sigma(x,y), H>/sqrt(<H,H>) for <H,H> > 0 and
/// -<sigma(x,y), H>/sqrt(-<H,H>) for <H,H> < 0. Throws MinimalPoint when
/// |H| <= zero_tol and LightlikeMeanCurvature when <H,H> vanishes.
double lambda_invariant(const Vec4& sigma_xy, const Vec4& H, Signature sig = Signature::Minkowski,
                        double zero_tol = 1e-12);

/// a(H) = (sqrt(varkappa^2 - k)/2) lambda l; values of varkappa^2 - k in
/// [-1e-12, 0) clamp to zero.
Vec4 allied_mean_curvature(double k, double varkappa, double lambda, const Vec4& l);

/// Chen's allied vector from shape-operator traces,
///   a(H) = (|H|/2) e1 e2 tr(A_1 A_2) xi_2,
/// with xi_1 = H/|H|, xi_2 a unit normal orthogonal to H and e_i = <xi_i,xi_i>.
/// In the Euclidean ambient e1 = e2 = 1 and this is Chen's definition verbatim.
/// sxx, sxy, syy are sigma on any orthonormal tangent pair.
Vec4 allied_by_trace(const Vec4& sxx, const Vec4& sxy, const Vec4& syy, const Vec4& H, const NormalFrame& frame);

/// Principal tangents as eigenvectors of the (I, II) pencil, at angles
/// alpha in [0, pi/2) and alpha - pi/2 from xbar (so both have <., xbar> >= 0
/// and the bisector case gives x = (xbar + ybar)/sqrt2, y = (xbar - ybar)/sqrt2).
/// Throws UmbilicalPoint when II is proportional to I.
TangentFrames principal_tangents(const FirstFundamental& I, const SecondFundamental& II, const Vec4& xbar,
                                 const Vec4& ybar);

/// Flat: |k|,|varkappa| <= tol; Hyperbolic: k < -tol; Elliptic: k > tol;
/// Parabolic: |k| <= tol < |varkappa|.
PointClass classify_point(double k, double varkappa, double tol = 1e-9);

/// Unit normal orthogonal to a non-null H with <l,l> = -sign<H,H>, oriented
/// so that sigma(x,y) has a non-negative l-component (falls back to
/// det(x, y, H/|H|, l) > 0 when that component vanishes).
Vec4 allied_direction(const Vec4& H, const NormalFrame& frame, const TangentFrames& tf, const Vec4& sigma_xy);

struct FaultInjection {
  bool flip_L_sign = false;
};

struct PipelineOptions {
  std::optional<NormalFrame> frame;  // default: orthonormal_normal_frame(z_u, z_v)
  double point_tol = 1e-9;
  FaultInjection fault;
};

struct InvariantSet {
  SurfaceJet jet;
  FirstFundamental I;
  NormalFrame frame;
  SecondTensorCoeffs c;
  SecondFundamental II;
  double k = 0.0;
  double varkappa = 0.0;
  double K = 0.0;
  Vec4 H;
  double H_norm2 = 0.0;
  MeanCurvatureKind H_kind = MeanCurvatureKind::Zero;
  std::optional<TangentFrames> tangents;
  std::optional<Vec4> sigma_xx, sigma_xy, sigma_yy;
  std::optional<double> lambda;
  std::optional<Vec4> l;
  std::optional<Vec4> allied;
  PointClass point_class = PointClass::Flat;
  double minimal_residual = 0.0;  // varkappa^2 - k

  /// Components of H on the frame vectors: H = h1 n1 + h2 n2.
  std::array<double, 2> H_components() const;
};

InvariantSet evaluate_invariants(const SurfacePatch& patch, double u, double v, const PipelineOptions& opt = {});

}  // namespace chenrot
