#include "chenrot/rotational.hpp"

#include <algorithm>
#include <cmath>

#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"

namespace chenrot::rotational {

namespace {

SurfaceJet lift(const CurveJet& j, Ambient amb, double v) {
  const double x1 = j.p[0], x2 = j.p[1], r = j.p[2];
  const double x1p = j.d1[0], x2p = j.d1[1], rp = j.d1[2];
  const double x1pp = j.d2[0], x2pp = j.d2[1], rpp = j.d2[2];
  SurfaceJet s;
  if (amb == Ambient::Hyperbolic) {
    const double sh = std::sinh(v), ch = std::cosh(v);
    s.z = {{x1, x2, r * sh, r * ch}};
    s.zu = {{x1p, x2p, rp * sh, rp * ch}};
    s.zv = {{0, 0, r * ch, r * sh}};
    s.zuu = {{x1pp, x2pp, rpp * sh, rpp * ch}};
    s.zuv = {{0, 0, rp * ch, rp * sh}};
    s.zvv = {{0, 0, r * sh, r * ch}};
  } else if (amb == Ambient::Elliptic) {
    const double c = std::cos(v), sn = std::sin(v);
    s.z = {{r * c, r * sn, x1, x2}};
    s.zu = {{rp * c, rp * sn, x1p, x2p}};
    s.zv = {{-r * sn, r * c, 0, 0}};
    s.zuu = {{rpp * c, rpp * sn, x1pp, x2pp}};
    s.zuv = {{-rp * sn, rp * c, 0, 0}};
    s.zvv = {{-r * c, -r * sn, 0, 0}};
  } else {
    const double c = std::cos(v), sn = std::sin(v);
    s.z = {{x1, x2, r * c, r * sn}};
    s.zu = {{x1p, x2p, rp * c, rp * sn}};
    s.zv = {{0, 0, -r * sn, r * c}};
    s.zuu = {{x1pp, x2pp, rpp * c, rpp * sn}};
    s.zuv = {{0, 0, -rp * sn, rp * c}};
    s.zvv = {{0, 0, -r * c, -r * sn}};
  }
  return s;
}

NormalFrame frame_from_jet(const CurveJet& j, Ambient amb, double v) {
  const FrenetApparatus fr = frenet(j, amb);
  const double k = fr.kappa;
  const double x1p = j.d1[0], x2p = j.d1[1], rp = j.d1[2];
  const double x1pp = j.d2[0], x2pp = j.d2[1], rpp = j.d2[2];
  const double k1 = kappa1(j);
  NormalFrame f;
  f.signature = surface_signature(amb);
  f.epsilon = amb == Ambient::Euclidean ? 1 : fr.epsilon;
  if (amb == Ambient::Hyperbolic) {
    const double sh = std::sinh(v), ch = std::cosh(v);
    f.n1 = Vec4{{x1pp, x2pp, rpp * sh, rpp * ch}} / k;
    f.n2 = Vec4{{x2p * rpp - x2pp * rp, rp * x1pp - x1p * rpp, -k1 * sh, -k1 * ch}} / k;
  } else if (amb == Ambient::Elliptic) {
    const double c = std::cos(v), s = std::sin(v);
    f.n1 = Vec4{{rpp * c, rpp * s, x1pp, x2pp}} / k;
    f.n2 = Vec4{{k1 * c, k1 * s, x2p * rpp - rp * x2pp, x1p * rpp - rp * x1pp}} / k;
  } else {
    const double c = std::cos(v), s = std::sin(v);
    f.n1 = Vec4{{x1pp, x2pp, rpp * c, rpp * s}} / k;
    f.n2 = Vec4{{x2p * rpp - x2pp * rp, x1pp * rp - x1p * rpp, k1 * c, k1 * s}} / k;
  }
  return f;
}

std::vector<double> linspace(Interval d, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? d.lo : d.lo + d.length() * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

SurfacePatch build(const ProfileCurve& profile) {
  SurfacePatch p;
  const Ambient amb = profile.ambient();
  p.signature = surface_signature(amb);
  p.u_domain = profile.domain();
  p.eval = [profile, amb](double u, double v) { return lift(profile.jet(u), amb, v); };
  return p;
}

SurfacePatch build(const ProfileCurve& profile, Ambient expected) {
  if (profile.ambient() != expected)
    throw GeometryError(ErrorCode::AmbientMismatch, std::string("profile is ") + to_string(profile.ambient()) +
                                                        ", surface requested as " + to_string(expected));
  return build(profile);
}

Interval default_v_range(Ambient a) {
  return a == Ambient::Hyperbolic ? Interval{-3.0, 3.0} : Interval{0.0, 2.0 * M_PI};
}

NormalFrame rotational_frame(const ProfileCurve& profile, double u, double v) {
  return frame_from_jet(profile.jet(u), profile.ambient(), v);
}

ClosedFormInvariants closed_form_invariants(const ProfileCurve& profile, double u) {
  const Ambient amb = profile.ambient();
  const CurveJet j = profile.jet(u);
  const FrenetApparatus fr = frenet(j, amb);
  ClosedFormInvariants cf;
  cf.u = u;
  cf.r = j.p[2];
  cf.r1 = j.d1[2];
  cf.r2 = j.d2[2];
  cf.kappa = fr.kappa;
  cf.kappa1 = kappa1(j);
  const double r = cf.r, r2 = cf.r2, k = cf.kappa, k1 = cf.kappa1;
  cf.k = -k1 * k1 / (r * r);
  cf.varkappa = 0.0;
  cf.K = -r2 / r;
  cf.L = 0.0;
  cf.N = 0.0;

  double s1 = 1.0, s2 = 1.0;  // <n1,n1>, <n2,n2>
  if (amb == Ambient::Euclidean) {
    cf.epsilon = 1;
    cf.M = -k1;
    const double a = (k * k * r - r2) / (2.0 * k * r), b = k1 / (2.0 * k * r);
    cf.H = cf.sigma_xx = cf.sigma_yy = {a, -b};
    cf.sigma_xy = {(k * k * r + r2) / (2.0 * k * r), b};
    cf.chen_condition = k * k * k * k * r * r - r2 * r2 - k1 * k1;
    cf.minimal_condition = r * k * k - r2;
  } else {
    const double eps = fr.epsilon;
    cf.epsilon = fr.epsilon;
    s1 = eps;
    s2 = -eps;
    // The kappa1 terms on n2 change sign between the hyperbolic and elliptic frames.
    const double side = amb == Ambient::Hyperbolic ? -1.0 : 1.0;
    cf.M = amb == Ambient::Hyperbolic ? eps * k1 : -eps * k1;
    const double a = (r * k * k - eps * r2) / (2.0 * r * k);
    const double b = side * eps * k1 / (2.0 * r * k);
    cf.H = cf.sigma_xx = cf.sigma_yy = {a, b};
    cf.sigma_xy = {(r * k * k + eps * r2) / (2.0 * r * k), -b};
    cf.chen_condition = r * r * k * k * k * k - r2 * r2 + k1 * k1;
    cf.minimal_condition = r * k * k - eps * r2;
  }
  cf.H_norm2 = s1 * cf.H.n1 * cf.H.n1 + s2 * cf.H.n2 * cf.H.n2;
  cf.sigma_xy_dot_H = s1 * cf.sigma_xy.n1 * cf.H.n1 + s2 * cf.sigma_xy.n2 * cf.H.n2;
  const double hscale = std::abs(cf.H.n1) + std::abs(cf.H.n2);
  if (hscale > 1e-12 && std::abs(cf.H_norm2) > 1e-9 * hscale * hscale) {
    cf.lambda = cf.H_norm2 > 0.0 ? cf.sigma_xy_dot_H / std::sqrt(cf.H_norm2)
                                 : -cf.sigma_xy_dot_H / std::sqrt(-cf.H_norm2);
  }
  return cf;
}

double DerivativeResiduals::max() const { return *std::max_element(residual.begin(), residual.end()); }

DerivativeResiduals derivative_formula_residuals(const ProfileCurve& profile, double u, double v,
                                                 const ResidualOptions& opt) {
  if (profile.ambient() != Ambient::Hyperbolic)
    throw GeometryError(ErrorCode::AmbientMismatch, "derivative formulas are stated for the hyperbolic ambient");
  const double h = opt.h;
  if (!profile.domain().contains(u - 2 * h) || !profile.domain().contains(u + 2 * h))
    throw GeometryError(ErrorCode::StencilOutOfDomain, "derivative stencil leaves the profile domain");

  const Ambient amb = profile.ambient();
  struct Fields {
    Vec4 xbar, ybar, n1, n2;
  };
  auto fields = [&](double uu, double vv) {
    const CurveJet j = profile.jet(uu);
    const SurfaceJet s = lift(j, amb, vv);
    const NormalFrame f = frame_from_jet(j, amb, vv);
    return Fields{s.zu, s.zv / j.p[2], f.n1, f.n2};
  };
  constexpr double w[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
  Fields du{}, dv{};
  for (int i = 0; i < 5; ++i) {
    if (i == 2) continue;
    const Fields a = fields(u + (i - 2) * h, v);
    const Fields b = fields(u, v + (i - 2) * h);
    du.xbar += (w[i] / h) * a.xbar;
    du.ybar += (w[i] / h) * a.ybar;
    du.n1 += (w[i] / h) * a.n1;
    du.n2 += (w[i] / h) * a.n2;
    dv.xbar += (w[i] / h) * b.xbar;
    dv.ybar += (w[i] / h) * b.ybar;
    dv.n1 += (w[i] / h) * b.n1;
    dv.n2 += (w[i] / h) * b.n2;
  }

  const CurveJet j = profile.jet(u);
  const Fields f0 = fields(u, v);
  const FrenetApparatus fr = frenet(j, amb);
  const double r = j.p[2], r1 = j.d1[2], r2 = j.d2[2];
  const double k = fr.kappa, k1 = kappa1(j), eps = fr.epsilon;

  // The displayed n2 is +-(lifted Frenet binormal); carry the torsion over.
  const Vec3 beta{{(j.d1[1] * r2 - j.d2[1] * r1) / k, (r1 * j.d2[0] - j.d1[0] * r2) / k, -k1 / k}};
  const double orient = inner3(fr.b, beta, amb) / inner3(beta, beta, amb) > 0.0 ? 1.0 : -1.0;
  const double tau = orient * fr.tau + opt.tau_offset;

  // Derivative along ybar is (1/r) d/dv.
  const double ir = 1.0 / r;
  DerivativeResiduals out;
  out.tau = tau;
  auto res = [](const Vec4& lhs, const Vec4& rhs) { return euclid_norm(lhs - rhs); };
  out.residual[0] = res(du.xbar, k * f0.n1);
  out.residual[1] = res(du.ybar, Vec4{});
  out.residual[2] = res(ir * dv.xbar, (r1 / r) * f0.ybar);
  out.residual[3] = res(ir * dv.ybar, -(r1 / r) * f0.xbar - (r2 / (r * k)) * eps * f0.n1 - (k1 / (r * k)) * eps * f0.n2);
  out.residual[4] = res(du.n1, -eps * k * f0.xbar + tau * f0.n2);
  out.residual[5] = res(ir * dv.n1, (r2 / (r * k)) * f0.ybar);
  // Metric compatibility <D n1, n2> + <n1, D n2> = 0 fixes this coefficient
  // to +tau for both signs of epsilon.
  out.residual[6] = res(du.n2, tau * f0.n1);
  out.residual[7] = res(ir * dv.n2, -(k1 / (r * k)) * f0.ybar);
  return out;
}

const char* to_string(ChenVerdict v) {
  switch (v) {
    case ChenVerdict::MinimalTrivialChen: return "MinimalTrivialChen";
    case ChenVerdict::HyperplanarTrivialChen: return "HyperplanarTrivialChen";
    case ChenVerdict::NonTrivialChen: return "NonTrivialChen";
    case ChenVerdict::NotChen: return "NotChen";
  }
  return "?";
}

ChenClassification chen_classify(const ProfileCurve& profile, std::size_t grid, std::optional<double> tol) {
  if (grid < 16) throw GeometryError(ErrorCode::PreconditionViolation, "classification grid needs >= 16 samples");
  ChenClassification out;
  out.grid = grid;
  out.min_abs_kappa1 = INFINITY;
  double max_rk2 = 0.0;
  for (double u : linspace(profile.domain(), grid)) {
    const ClosedFormInvariants cf = closed_form_invariants(profile, u);
    out.residual_kappa1 = std::max(out.residual_kappa1, std::abs(cf.kappa1));
    out.min_abs_kappa1 = std::min(out.min_abs_kappa1, std::abs(cf.kappa1));
    out.residual_case_i = std::max(out.residual_case_i, std::abs(cf.minimal_condition));
    out.residual_case_iii = std::max(out.residual_case_iii, std::abs(cf.chen_condition));
    max_rk2 = std::max(max_rk2, std::abs(cf.r * cf.kappa * cf.kappa));
  }
  out.tol = tol.value_or(1e-6 * (1.0 + max_rk2));
  const bool k1_zero = out.residual_kappa1 <= out.tol;
  const bool k1_nonzero = out.min_abs_kappa1 > out.tol;
  if (!k1_zero && !k1_nonzero)
    throw GeometryError(ErrorCode::MixedRegime, "kappa1 vanishes on part of the grid only (min |kappa1| = " +
                                                    format_double(out.min_abs_kappa1) +
                                                    ", max |kappa1| = " + format_double(out.residual_kappa1) + ")");
  if (k1_zero) {
    out.verdict = out.residual_case_i <= out.tol ? ChenVerdict::MinimalTrivialChen : ChenVerdict::HyperplanarTrivialChen;
  } else {
    out.verdict = out.residual_case_iii <= out.tol ? ChenVerdict::NonTrivialChen : ChenVerdict::NotChen;
  }
  return out;
}

HyperplaneWitness hyperplane_witness(const ProfileCurve& profile, std::size_t grid, double tol) {
  if (grid < 2) throw GeometryError(ErrorCode::PreconditionViolation, "witness grid needs >= 2 samples");
  const Interval ud = profile.domain();
  const auto us = linspace(ud, grid);
  double max_rk2 = 0.0, max_k1 = 0.0;
  for (double u : us) {
    const ClosedFormInvariants cf = closed_form_invariants(profile, u);
    max_rk2 = std::max(max_rk2, std::abs(cf.r * cf.kappa * cf.kappa));
    max_k1 = std::max(max_k1, std::abs(cf.kappa1));
  }
  if (max_k1 > 1e-6 * (1.0 + max_rk2))
    throw GeometryError(ErrorCode::PreconditionViolation,
                        "hyperplane witness needs kappa1 = 0 on the profile (max |kappa1| = " + format_double(max_k1) + ")");

  const Ambient amb = profile.ambient();
  const SurfacePatch patch = build(profile);
  const double umid = 0.5 * (ud.lo + ud.hi);
  HyperplaneWitness w;
  w.normal = rotational_frame(profile, umid, 0.0).n2;
  w.base_point = patch.jet(umid, 0.0).z;
  const Signature sig = patch.signature;
  const double nn = std::abs(inner(w.normal, w.normal, sig));
  const auto vs = linspace(default_v_range(amb), grid);
  const double h = 1e-4 * (1.0 + ud.length());
  for (double u : us) {
    for (double v : vs) {
      const Vec4 z = patch.jet(u, v).z;
      w.max_distance = std::max(w.max_distance, std::abs(inner(z - w.base_point, w.normal, sig)) / std::sqrt(nn));
      // Centered difference of n2 in u (one-sided at the ends) and in v.
      const double ua = std::max(ud.lo, u - h), ub = std::min(ud.hi, u + h);
      const Vec4 dn_u = (rotational_frame(profile, ub, v).n2 - rotational_frame(profile, ua, v).n2) / (ub - ua);
      const Vec4 dn_v = (rotational_frame(profile, u, v + h).n2 - rotational_frame(profile, u, v - h).n2) / (2 * h);
      w.max_normal_derivative = std::max({w.max_normal_derivative, euclid_norm(dn_u), euclid_norm(dn_v)});
    }
  }
  if (w.max_distance > tol)
    throw GeometryError(ErrorCode::NotHyperplanar,
                        "surface deviates " + format_double(w.max_distance) + " from the witness hyperplane");
  return w;
}

}  // namespace chenrot::rotational
