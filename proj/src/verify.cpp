#include "chenrot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "chenrot/error.hpp"
#include "chenrot/registry.hpp"
#include "chenrot/rotational.hpp"

namespace chenrot {

namespace {

struct Grid {
  std::vector<double> u, v;
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

Grid grid_for(const ProfileCurve& c, std::size_t nu, std::size_t nv, double margin = 0.02) {
  const Interval d = c.domain();
  const Interval vr = rotational::default_v_range(c.ambient());
  const double m = margin * d.length();
  return {linspace(d.lo + m, d.hi - m, nu), linspace(vr.lo, vr.hi, nv)};
}

bool minkowski(const ProfileCurve& c) { return c.ambient() != Ambient::Euclidean; }

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

class Collector {
 public:
  explicit Collector(const VerifyOptions& opt) : opt_(opt) {}

  bool wants(const std::string& suite) const {
    return opt_.suites.empty() || std::find(opt_.suites.begin(), opt_.suites.end(), suite) != opt_.suites.end();
  }
  void add(const std::string& suite, const std::string& check, const std::string& subject, double value,
           double threshold) {
    rows_.push_back({suite, check, subject, value, threshold, std::isfinite(value) && value <= threshold});
  }
  PipelineOptions pipeline(std::optional<NormalFrame> frame = std::nullopt) const {
    PipelineOptions p;
    p.frame = frame;
    p.fault = opt_.fault;
    return p;
  }
  std::vector<VerifyRow> take() { return std::move(rows_); }

 private:
  const VerifyOptions& opt_;
  std::vector<VerifyRow> rows_;
};

bool lambda_usable(const InvariantSet& s) {
  return s.lambda && std::abs(s.H_norm2) > 1e-6 * euclid_inner(s.H, s.H);
}

void suite_pipeline(Collector& col, const RegistryProfile& rp) {
  const ProfileCurve& c = rp.curve;
  const SurfacePatch patch = rotational::build(c);
  const double tol = rp.analytic ? 1e-7 : 1e-4;
  const Grid g = grid_for(c, 7, 5);
  double dk = 0, dK = 0, dH = 0, dl = 0, spread = 0, frame = 0;
  for (double u : g.u) {
    const auto cf = rotational::closed_form_invariants(c, u);
    std::optional<InvariantSet> first;
    for (double v : g.v) {
      const InvariantSet s = evaluate_invariants(patch, u, v, col.pipeline(rotational::rotational_frame(c, u, v)));
      dk = std::max(dk, rel(s.k, -cf.kappa1 * cf.kappa1 / (cf.r * cf.r)));
      dK = std::max(dK, rel(s.K, -cf.r2 / cf.r));
      dH = std::max(dH, rel(s.H_norm2, cf.H_norm2));
      if (lambda_usable(s) && cf.lambda) dl = std::max(dl, rel(std::abs(*s.lambda), std::abs(*cf.lambda)));
      if (!first) {
        first = s;
      } else {
        spread = std::max({spread, std::abs(s.k - first->k), std::abs(s.varkappa - first->varkappa),
                           std::abs(s.K - first->K), std::abs(s.H_norm2 - first->H_norm2)});
        if (s.lambda && first->lambda) spread = std::max(spread, std::abs(*s.lambda - *first->lambda));
      }
      // Generic frame and a boosted / rotated copy of it.
      const InvariantSet a = evaluate_invariants(patch, u, v, col.pipeline());
      const InvariantSet b = evaluate_invariants(patch, u, v, col.pipeline(transform_normal_frame(a.frame, 0.7)));
      for (const InvariantSet* o : {&a, &b}) {
        frame = std::max({frame, std::abs(o->k - s.k), std::abs(std::abs(o->varkappa) - std::abs(s.varkappa)),
                          std::abs(o->K - s.K), euclid_norm(o->H - s.H)});
        if (o->lambda && s.lambda) frame = std::max(frame, std::abs(std::abs(*o->lambda) - std::abs(*s.lambda)));
      }
    }
  }
  col.add("pipeline", "k = -kappa1^2/r^2", rp.name, dk, tol);
  col.add("pipeline", "K = -r''/r", rp.name, dK, tol);
  col.add("pipeline", "<H,H> closed form", rp.name, dH, tol);
  col.add("pipeline", "|lambda| closed form", rp.name, dl, tol);
  col.add("pipeline", "v-independence", rp.name, spread, 1e-9);
  col.add("pipeline", "normal-frame independence", rp.name, frame, 1e-8);
}

void suite_flatness(Collector& col, const RegistryProfile& rp) {
  if (!minkowski(rp.curve)) return;
  const SurfacePatch patch = rotational::build(rp.curve);
  const Grid g = grid_for(rp.curve, 32, 32, 0.0);
  double worst = 0.0;
  for (double u : g.u)
    for (double v : g.v) worst = std::max(worst, std::abs(evaluate_invariants(patch, u, v, col.pipeline()).varkappa));
  col.add("flatness", "|varkappa| on 32x32", rp.name, worst, 1e-8);
}

void suite_allied(Collector& col, const RegistryProfile& rp) {
  const SurfacePatch patch = rotational::build(rp.curve);
  const Grid g = grid_for(rp.curve, 16, 8);
  double diff = 0.0, ortho = 0.0;
  for (double u : g.u) {
    for (double v : g.v) {
      const InvariantSet s = evaluate_invariants(patch, u, v, col.pipeline());
      if (!s.allied || !s.tangents) continue;
      const TangentFrames& t = *s.tangents;
      const Vec4 trace = allied_by_trace(sigma(s.jet, s.I, s.c, s.frame, t.x, t.x), *s.sigma_xy,
                                         sigma(s.jet, s.I, s.c, s.frame, t.y, t.y), s.H, s.frame);
      diff = std::max(diff, euclid_norm(trace - *s.allied));
      const Signature sg = patch.signature;
      ortho = std::max({ortho, std::abs(inner(*s.l, s.H, sg)), std::abs(inner(*s.allied, s.H, sg))});
    }
  }
  col.add("allied", minkowski(rp.curve) ? "trace form vs (sqrt(varkappa^2-k)/2) lambda l"
                                        : "Chen trace definition vs (sqrt(varkappa^2-k)/2) lambda l",
          rp.name, diff, minkowski(rp.curve) ? 1e-8 : 1e-7);
  col.add("allied", "<l,H>, <a(H),H>", rp.name, ortho, 1e-9);
}

void suite_minimal(Collector& col, const RegistryProfile& rp) {
  const SurfacePatch patch = rotational::build(rp.curve);
  const Grid g = grid_for(rp.curve, 32, 8, 0.0);
  double worst = 0.0;
  std::size_t n = 0;
  for (double u : g.u) {
    for (double v : g.v) {
      const InvariantSet s = evaluate_invariants(patch, u, v, col.pipeline());
      if (euclid_norm(s.H) > 1e-9) continue;
      ++n;
      worst = std::max(worst, std::abs(s.minimal_residual));
    }
  }
  col.add("minimal", "|varkappa^2 - k| where |H| <= 1e-9 (" + std::to_string(n) + " points)", rp.name, worst, 1e-7);
}

void suite_derivative(Collector& col, const RegistryProfile& rp) {
  if (rp.curve.ambient() != Ambient::Hyperbolic || !rp.analytic) return;
  const rotational::ResidualOptions ro;
  const Interval d = rp.curve.domain();
  const Interval vr = rotational::default_v_range(Ambient::Hyperbolic);
  const auto us = linspace(d.lo + 4 * ro.h, d.hi - 4 * ro.h, 16);
  const auto vs = linspace(vr.lo, vr.hi, 16);
  std::array<double, 8> worst{};
  for (double u : us)
    for (double v : vs) {
      const auto r = rotational::derivative_formula_residuals(rp.curve, u, v, ro);
      for (int i = 0; i < 8; ++i) worst[i] = std::max(worst[i], r.residual[i]);
    }
  for (int i = 0; i < 8; ++i)
    col.add("derivative", std::string(rotational::DerivativeResiduals::kNames[i]) + " on 16x16", rp.name, worst[i],
            1e-6);
}

void suite_gauss(Collector& col, const RegistryProfile& rp) {
  const SurfacePatch patch = rotational::build(rp.curve);
  const Grid g = grid_for(rp.curve, 9, 5, 0.05);
  double worst = 0.0;
  for (double u : g.u) {
    const auto cf = rotational::closed_form_invariants(rp.curve, u);
    for (double v : g.v) worst = std::max(worst, std::abs(gauss_curvature(patch, u, v) - cf.K));
  }
  col.add("gauss", "intrinsic K vs -r''/r", rp.name, worst, 1e-5);
}

// The rotational patch in sheared parameters u = s + 0.5 t, v = 0.3 s - t has
// L != 0; (L, M, N) then transform as sign(det J) J^T [[0, M],[M, 0]] J.
void suite_second_form(Collector& col, const RegistryProfile& rp) {
  const ProfileCurve& c = rp.curve;
  const SurfacePatch base = rotational::build(c);
  const double a = 1.0, b = 0.5, cc = 0.3, d = -1.0, det = a * d - b * cc;
  SurfacePatch sk;
  sk.signature = base.signature;
  sk.u_domain = {-INFINITY, INFINITY};
  sk.eval = [&](double s, double t) {
    const SurfaceJet j = base.eval(a * s + b * t, cc * s + d * t);
    SurfaceJet o;
    o.z = j.z;
    o.zu = a * j.zu + cc * j.zv;
    o.zv = b * j.zu + d * j.zv;
    o.zuu = a * a * j.zuu + 2 * a * cc * j.zuv + cc * cc * j.zvv;
    o.zuv = a * b * j.zuu + (a * d + b * cc) * j.zuv + cc * d * j.zvv;
    o.zvv = b * b * j.zuu + 2 * b * d * j.zuv + d * d * j.zvv;
    return o;
  };
  const Grid g = grid_for(c, 9, 5);
  const double sg = det > 0 ? 1.0 : -1.0;
  double worst = 0.0;
  for (double u : g.u) {
    const auto cf = rotational::closed_form_invariants(c, u);
    for (double v : g.v) {
      const double s = (d * u - b * v) / det, t = (-cc * u + a * v) / det;
      const InvariantSet inv = evaluate_invariants(sk, s, t, col.pipeline(rotational::rotational_frame(c, u, v)));
      const double M = cf.M;
      const double L = sg * 2 * a * cc * M, Mm = sg * (a * d + b * cc) * M, N = sg * 2 * b * d * M;
      worst = std::max({worst, rel(inv.II.L, L), rel(inv.II.M, Mm), rel(inv.II.N, N)});
    }
  }
  col.add("second-form", "L, M, N on sheared patch", rp.name, worst, rp.analytic ? 1e-9 : 1e-6);
}

void suite_chen(Collector& col, const RegistryProfile& rp) {
  const ProfileCurve& c = rp.curve;
  const auto cls = rotational::chen_classify(c, 64);
  if (!(cls.min_abs_kappa1 > cls.tol)) return;
  const SurfacePatch patch = rotational::build(c);
  const Grid g = grid_for(c, 16, 4);
  double lam = 0.0;
  for (double u : g.u)
    for (double v : g.v) {
      const InvariantSet s = evaluate_invariants(patch, u, v, col.pipeline());
      if (lambda_usable(s)) lam = std::max(lam, std::abs(*s.lambda));
    }
  const bool nontrivial = cls.verdict == rotational::ChenVerdict::NonTrivialChen;
  const bool small = lam <= 1e-6;
  col.add("chen", std::string("verdict ") + rotational::to_string(cls.verdict) + " vs max |lambda| " +
                      (small ? "<= 1e-6" : "> 1e-6"),
          rp.name, nontrivial == small ? 0.0 : 1.0, 0.0);
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"pipeline", "flatness",    "allied", "minimal",
                                                 "derivative", "gauss", "second-form", "chen"};
  return names;
}

std::vector<VerifyRow> run_verify(const VerifyOptions& opt) {
  for (const std::string& s : opt.suites)
    if (std::find(verify_suite_names().begin(), verify_suite_names().end(), s) == verify_suite_names().end())
      throw GeometryError(ErrorCode::InvalidSpec, "unknown verify suite '" + s + "'");
  Collector col(opt);
  const auto profiles = registry_profiles();
  using Suite = void (*)(Collector&, const RegistryProfile&);
  const std::pair<const char*, Suite> suites[] = {
      {"pipeline", suite_pipeline}, {"flatness", suite_flatness}, {"allied", suite_allied},
      {"minimal", suite_minimal},   {"derivative", suite_derivative}, {"gauss", suite_gauss},
      {"second-form", suite_second_form}, {"chen", suite_chen}};
  for (const auto& [name, fn] : suites) {
    if (!col.wants(name)) continue;
    for (const RegistryProfile& rp : profiles) fn(col, rp);
  }
  return col.take();
}

}  // namespace chenrot
