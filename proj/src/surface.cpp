#include "chenrot/surface.hpp"

#include <algorithm>
#include <cmath>

#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"

namespace chenrot {

const char* to_string(PointClass p) {
  switch (p) {
    case PointClass::Flat: return "Flat";
    case PointClass::Elliptic: return "Elliptic";
    case PointClass::Hyperbolic: return "Hyperbolic";
    case PointClass::Parabolic: return "Parabolic";
  }
  return "?";
}

const char* to_string(MeanCurvatureKind m) {
  switch (m) {
    case MeanCurvatureKind::Zero: return "Zero";
    case MeanCurvatureKind::Spacelike: return "Spacelike";
    case MeanCurvatureKind::Timelike: return "Timelike";
    case MeanCurvatureKind::Lightlike: return "Lightlike";
  }
  return "?";
}

SurfaceJet SurfacePatch::jet(double u, double v) const {
  if (!contains(u, v))
    throw GeometryError(ErrorCode::OutOfDomain,
                        "(u, v) = (" + format_double(u) + ", " + format_double(v) + ") outside the patch");
  return eval(u, v);
}

namespace {

// 4th-order central stencils on offsets -2..2.
constexpr double kD1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
constexpr double kD2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};

}  // namespace

SurfacePatch make_stencil_patch(Signature sig, std::function<Vec4(double, double)> map, Interval u_domain,
                                Interval v_domain, double h) {
  SurfacePatch p;
  p.signature = sig;
  p.u_domain = u_domain;
  p.v_domain = v_domain;
  p.eval = [map = std::move(map), h](double u, double v) {
    Vec4 s[5][5];
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) s[i][j] = map(u + (i - 2) * h, v + (j - 2) * h);
    SurfaceJet jt;
    jt.z = s[2][2];
    for (int i = 0; i < 5; ++i) {
      jt.zu += (kD1[i] / h) * s[i][2];
      jt.zv += (kD1[i] / h) * s[2][i];
      jt.zuu += (kD2[i] / (h * h)) * s[i][2];
      jt.zvv += (kD2[i] / (h * h)) * s[2][i];
      for (int j = 0; j < 5; ++j) jt.zuv += (kD1[i] * kD1[j] / (h * h)) * s[i][j];
    }
    return jt;
  };
  return p;
}

double SecondTensorCoeffs::at(int i, int j, int k) const {
  const int ij = i + j;  // 2: (1,1), 3: (1,2), 4: (2,2)
  if (k == 1) return ij == 2 ? c111 : ij == 3 ? c121 : c221;
  return ij == 2 ? c112 : ij == 3 ? c122 : c222;
}

FirstFundamental first_form(const SurfaceJet& j, Signature sig) {
  FirstFundamental I;
  I.E = inner(j.zu, j.zu, sig);
  I.F = inner(j.zu, j.zv, sig);
  I.G = inner(j.zv, j.zv, sig);
  const double w2 = I.E * I.G - I.F * I.F;
  if (!(I.E > 0.0) || !(I.G > 0.0) || !(w2 > 0.0))
    throw GeometryError(ErrorCode::NotSpacelike, "induced metric is not positive definite (E=" + format_double(I.E) +
                                                     ", G=" + format_double(I.G) + ", EG-F^2=" + format_double(w2) + ")");
  I.W = std::sqrt(w2);
  return I;
}

FirstFundamental first_form(const SurfacePatch& patch, double u, double v) {
  return first_form(patch.jet(u, v), patch.signature);
}

SecondTensorCoeffs second_tensor(const SurfaceJet& j, const NormalFrame& f) {
  const Signature s = f.signature;
  SecondTensorCoeffs c;
  c.c111 = inner(j.zuu, f.n1, s);
  c.c121 = inner(j.zuv, f.n1, s);
  c.c221 = inner(j.zvv, f.n1, s);
  c.c112 = inner(j.zuu, f.n2, s);
  c.c122 = inner(j.zuv, f.n2, s);
  c.c222 = inner(j.zvv, f.n2, s);
  return c;
}

SecondFundamental second_form(const SecondTensorCoeffs& c, double W) {
  SecondFundamental II;
  II.L = (2.0 / W) * (c.c111 * c.c122 - c.c121 * c.c112);
  II.M = (1.0 / W) * (c.c111 * c.c222 - c.c221 * c.c112);
  II.N = (2.0 / W) * (c.c121 * c.c222 - c.c221 * c.c122);
  return II;
}

GammaInvariants gamma_invariants(const FirstFundamental& I, const SecondFundamental& II) {
  const double w2 = I.E * I.G - I.F * I.F;
  return {(II.L * II.N - II.M * II.M) / w2, (I.E * II.N + I.G * II.L - 2.0 * I.F * II.M) / (2.0 * w2)};
}

double gauss_curvature(const SurfacePatch& patch, double u, double v, double h) {
  if (!patch.contains(u - 2 * h, v - 2 * h) || !patch.contains(u + 2 * h, v + 2 * h))
    throw GeometryError(ErrorCode::StencilOutOfDomain,
                        "metric stencil at (" + format_double(u) + ", " + format_double(v) + ") leaves the patch");
  double E[5][5], F[5][5], G[5][5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const SurfaceJet jt = patch.eval(u + (i - 2) * h, v + (j - 2) * h);
      E[i][j] = inner(jt.zu, jt.zu, patch.signature);
      F[i][j] = inner(jt.zu, jt.zv, patch.signature);
      G[i][j] = inner(jt.zv, jt.zv, patch.signature);
    }
  auto du = [&](double (&f)[5][5]) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += kD1[i] * f[i][2];
    return s / h;
  };
  auto dv = [&](double (&f)[5][5]) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += kD1[i] * f[2][i];
    return s / h;
  };
  auto duu = [&](double (&f)[5][5]) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += kD2[i] * f[i][2];
    return s / (h * h);
  };
  auto dvv = [&](double (&f)[5][5]) {
    double s = 0;
    for (int i = 0; i < 5; ++i) s += kD2[i] * f[2][i];
    return s / (h * h);
  };
  auto duv = [&](double (&f)[5][5]) {
    double s = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) s += kD1[i] * kD1[j] * f[i][j];
    return s / (h * h);
  };
  const double e = E[2][2], f = F[2][2], g = G[2][2];
  const double Eu = du(E), Ev = dv(E), Fu = du(F), Fv = dv(F), Gu = du(G), Gv = dv(G);
  const double Evv = dvv(E), Fuv = duv(F), Guu = duu(G);
  auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12, double a20, double a21,
                 double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) + a02 * (a10 * a21 - a11 * a20);
  };
  const double A = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, e, f, 0.5 * Gv, f, g);
  const double B = det3(0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, e, f, 0.5 * Gu, f, g);
  const double w2 = e * g - f * f;
  return (A - B) / (w2 * w2);
}

Vec4 sigma_coordinate(const SecondTensorCoeffs& c, const NormalFrame& frame, int i, int j) {
  return frame.norm_sign(0) * c.at(i, j, 1) * frame.n1 + frame.norm_sign(1) * c.at(i, j, 2) * frame.n2;
}

double gauss_curvature_extrinsic(const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame) {
  double num = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const double s = frame.norm_sign(k - 1);
    num += s * (c.at(1, 1, k) * c.at(2, 2, k) - c.at(1, 2, k) * c.at(1, 2, k));
  }
  return num / (I.W * I.W);
}

Vec4 sigma(const SurfaceJet& j, const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame,
           const Vec4& X, const Vec4& Y) {
  const Signature s = frame.signature;
  const double w2 = I.W * I.W;
  auto coords = [&](const Vec4& T) {
    const double p = inner(T, j.zu, s), q = inner(T, j.zv, s);
    return std::array<double, 2>{(I.G * p - I.F * q) / w2, (I.E * q - I.F * p) / w2};
  };
  const auto a = coords(X), b = coords(Y);
  return (a[0] * b[0]) * sigma_coordinate(c, frame, 1, 1) +
         (a[0] * b[1] + a[1] * b[0]) * sigma_coordinate(c, frame, 1, 2) +
         (a[1] * b[1]) * sigma_coordinate(c, frame, 2, 2);
}

Vec4 mean_curvature(const FirstFundamental& I, const SecondTensorCoeffs& c, const NormalFrame& frame) {
  const double w2 = I.W * I.W;
  Vec4 H;
  for (int k = 1; k <= 2; ++k) {
    const double coef = (I.E * c.at(2, 2, k) - 2.0 * I.F * c.at(1, 2, k) + I.G * c.at(1, 1, k)) / (2.0 * w2);
    H += frame.norm_sign(k - 1) * coef * frame[k - 1];
  }
  return H;
}

double minimal_tolerance(const SurfaceJet& j) { return 1e-9 * (1.0 + euclid_norm(j.zuu) + euclid_norm(j.zvv)); }

MeanCurvatureKind mean_curvature_kind(const Vec4& H, Signature sig, double zero_tol) {
  const double n = euclid_norm(H);
  if (!(n > zero_tol)) return MeanCurvatureKind::Zero;
  const double q = inner(H, H, sig);
  if (std::abs(q) <= 1e-9 * n * n) return MeanCurvatureKind::Lightlike;
  return q > 0.0 ? MeanCurvatureKind::Spacelike : MeanCurvatureKind::Timelike;
}

double lambda_invariant(const Vec4& sigma_xy, const Vec4& H, Signature sig, double zero_tol) {
  switch (mean_curvature_kind(H, sig, zero_tol)) {
    case MeanCurvatureKind::Zero:
      throw GeometryError(ErrorCode::MinimalPoint, "mean curvature vector vanishes");
    case MeanCurvatureKind::Lightlike:
      throw GeometryError(ErrorCode::LightlikeMeanCurvature, "mean curvature vector is lightlike");
    case MeanCurvatureKind::Spacelike:
      return inner(sigma_xy, H, sig) / std::sqrt(inner(H, H, sig));
    case MeanCurvatureKind::Timelike:
      return -inner(sigma_xy, H, sig) / std::sqrt(-inner(H, H, sig));
  }
  return 0.0;
}

Vec4 allied_mean_curvature(double k, double varkappa, double lambda, const Vec4& l) {
  double q = varkappa * varkappa - k;
  if (q < 0.0 && q >= -1e-12) q = 0.0;
  return (0.5 * std::sqrt(q) * lambda) * l;
}

namespace {

// Unit normal orthogonal to H, unoriented.
Vec4 normal_complement(const Vec4& H, const NormalFrame& frame) {
  const Signature s = frame.signature;
  const double s1 = frame.norm_sign(0), s2 = frame.norm_sign(1);
  const double h1 = s1 * inner(H, frame.n1, s), h2 = s2 * inner(H, frame.n2, s);
  const Vec4 l = (s2 * h2) * frame.n1 - (s1 * h1) * frame.n2;
  return l / std::sqrt(std::abs(inner(l, l, s)));
}

}  // namespace

Vec4 allied_by_trace(const Vec4& sxx, const Vec4& sxy, const Vec4& syy, const Vec4& H, const NormalFrame& frame) {
  const Signature s = frame.signature;
  const double hh = inner(H, H, s);
  const double hn = std::sqrt(std::abs(hh));
  const Vec4 xi1 = H / hn;
  const Vec4 xi2 = normal_complement(H, frame);
  const double e1 = hh > 0.0 ? 1.0 : -1.0;
  const double e2 = inner(xi2, xi2, s) > 0.0 ? 1.0 : -1.0;
  auto A = [&](const Vec4& xi) {
    return std::array<double, 3>{inner(sxx, xi, s), inner(sxy, xi, s), inner(syy, xi, s)};
  };
  const auto a1 = A(xi1), a2 = A(xi2);
  const double tr = a1[0] * a2[0] + 2.0 * a1[1] * a2[1] + a1[2] * a2[2];
  return (0.5 * hn * e1 * e2 * tr) * xi2;
}

TangentFrames principal_tangents(const FirstFundamental& I, const SecondFundamental& II, const Vec4& xbar,
                                 const Vec4& ybar) {
  // Orthonormal-coordinate matrix S = P^T II P with columns of P the
  // coordinates of xbar, ybar.
  const double se = std::sqrt(I.E);
  const double p00 = 1.0 / se, p01 = -I.F / (se * I.W), p11 = se / I.W;
  const double s00 = p00 * p00 * II.L;
  const double s01 = p00 * (p01 * II.L + p11 * II.M);
  const double s11 = p01 * p01 * II.L + 2.0 * p01 * p11 * II.M + p11 * p11 * II.N;
  const double aniso = std::hypot(s00 - s11, 2.0 * s01);
  if (!(aniso > 1e-9 * (1.0 + std::abs(s00) + std::abs(s11) + 2.0 * std::abs(s01))))
    throw GeometryError(ErrorCode::UmbilicalPoint, "second fundamental form is proportional to the first");
  // Eigen-directions at angles alpha and alpha - pi/2 from xbar, with
  // alpha in [0, pi/2).
  double alpha = 0.5 * std::atan2(2.0 * s01, s00 - s11);
  alpha = std::fmod(alpha + M_PI, 0.5 * M_PI);
  if (alpha >= 0.5 * M_PI) alpha -= 0.5 * M_PI;
  const double a = std::cos(alpha), b = std::sin(alpha);
  TangentFrames tf;
  tf.xbar = xbar;
  tf.ybar = ybar;
  tf.x = a * xbar + b * ybar;
  tf.y = b * xbar - a * ybar;
  return tf;
}

PointClass classify_point(double k, double varkappa, double tol) {
  if (k < -tol) return PointClass::Hyperbolic;
  if (k > tol) return PointClass::Elliptic;
  return std::abs(varkappa) <= tol ? PointClass::Flat : PointClass::Parabolic;
}

Vec4 allied_direction(const Vec4& H, const NormalFrame& frame, const TangentFrames& tf, const Vec4& sigma_xy) {
  const Signature s = frame.signature;
  Vec4 l = normal_complement(H, frame);
  const double mu = inner(sigma_xy, l, s) * (inner(l, l, s) > 0.0 ? 1.0 : -1.0);
  const double scale = euclid_norm(sigma_xy);
  if (std::abs(mu) > 1e-12 * (1.0 + scale)) {
    if (mu < 0.0) l = -l;
  } else {
    const double hn = std::sqrt(std::abs(inner(H, H, s)));
    if (det4(tf.x, tf.y, H / hn, l) < 0.0) l = -l;
  }
  return l;
}

std::array<double, 2> InvariantSet::H_components() const {
  const Signature s = frame.signature;
  return {frame.norm_sign(0) * inner(H, frame.n1, s), frame.norm_sign(1) * inner(H, frame.n2, s)};
}

InvariantSet evaluate_invariants(const SurfacePatch& patch, double u, double v, const PipelineOptions& opt) {
  InvariantSet out;
  const Signature sig = patch.signature;
  out.jet = patch.jet(u, v);
  const SurfaceJet& j = out.jet;
  out.I = first_form(j, sig);
  out.frame = opt.frame ? *opt.frame : orthonormal_normal_frame(j.zu, j.zv, sig);
  out.c = second_tensor(j, out.frame);
  out.II = second_form(out.c, out.I.W);
  if (opt.fault.flip_L_sign) out.II.L = -out.II.L;
  const GammaInvariants g = gamma_invariants(out.I, out.II);
  out.k = g.k;
  out.varkappa = g.varkappa;
  out.minimal_residual = g.varkappa * g.varkappa - g.k;
  out.K = gauss_curvature_extrinsic(out.I, out.c, out.frame);
  out.H = mean_curvature(out.I, out.c, out.frame);
  out.H_norm2 = inner(out.H, out.H, sig);
  out.H_kind = mean_curvature_kind(out.H, sig, minimal_tolerance(j));
  out.point_class = classify_point(g.k, g.varkappa, opt.point_tol);

  const Vec4 xbar = j.zu / std::sqrt(out.I.E);
  const Vec4 ybar = (j.zv - (out.I.F / out.I.E) * j.zu) * (std::sqrt(out.I.E) / out.I.W);
  try {
    out.tangents = principal_tangents(out.I, out.II, xbar, ybar);
  } catch (const GeometryError&) {
    // Flat points (II = 0) and umbilical points of sigma single out no
    // direction; take the bisectors of (xbar, ybar). Other degenerate points
    // leave lambda, l and a(H) unset.
    const Vec4 sxx = sigma(j, out.I, out.c, out.frame, xbar, xbar);
    const Vec4 sxy = sigma(j, out.I, out.c, out.frame, xbar, ybar);
    const Vec4 syy = sigma(j, out.I, out.c, out.frame, ybar, ybar);
    const double tol = minimal_tolerance(j);
    const double iiscale = std::abs(out.II.L) + std::abs(out.II.M) + std::abs(out.II.N);
    const bool flat = iiscale <= 1e-12 * (1.0 + euclid_norm(j.zuu) + euclid_norm(j.zvv));
    if (flat || (euclid_norm(sxy) <= tol && euclid_norm(sxx - syy) <= tol)) {
      const double c = std::sqrt(0.5);
      out.tangents = TangentFrames{xbar, ybar, c * (xbar + ybar), c * (xbar - ybar)};
    }
  }
  if (out.tangents) {
    const TangentFrames& tf = *out.tangents;
    out.sigma_xx = sigma(j, out.I, out.c, out.frame, tf.x, tf.x);
    out.sigma_xy = sigma(j, out.I, out.c, out.frame, tf.x, tf.y);
    out.sigma_yy = sigma(j, out.I, out.c, out.frame, tf.y, tf.y);
    if (out.H_kind == MeanCurvatureKind::Spacelike || out.H_kind == MeanCurvatureKind::Timelike) {
      out.lambda = lambda_invariant(*out.sigma_xy, out.H, sig, minimal_tolerance(j));
      out.l = allied_direction(out.H, out.frame, tf, *out.sigma_xy);
      out.allied = allied_mean_curvature(out.k, out.varkappa, *out.lambda, *out.l);
    }
  }
  return out;
}

}  // namespace chenrot
