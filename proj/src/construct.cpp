#include "chenrot/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"
#include "chenrot/rotational.hpp"
#include "chenrot/surface.hpp"

namespace chenrot {

const char* to_string(ConstructTarget t) {
  switch (t) {
    case ConstructTarget::Chen: return "chen";
    case ConstructTarget::ConstantK: return "constant-k";
    case ConstructTarget::Minimal: return "minimal";
  }
  return "?";
}

ConstructTarget parse_construct_target(const std::string& s) {
  if (s == "chen") return ConstructTarget::Chen;
  if (s == "constant-k") return ConstructTarget::ConstantK;
  if (s == "minimal") return ConstructTarget::Minimal;
  throw GeometryError(ErrorCode::InvalidSpec, "unknown construction target '" + s + "'");
}

namespace {

// Speed factor rho (hyperbolic) or m (elliptic, Euclidean) and its derivative.
struct Speed {
  double s = 1.0, ds = 0.0;
};

Speed speed(Ambient amb, const RJet& r) {
  if (!(r.r > 0.0)) throw GeometryError(ErrorCode::OutOfDomain, "r <= 0");
  if (amb == Ambient::Hyperbolic) {
    const double rho = std::sqrt(1.0 + r.d1 * r.d1);
    return {rho, r.d1 * r.d2 / rho};
  }
  const double m2 = 1.0 - r.d1 * r.d1;
  if (!(m2 > 0.0)) throw GeometryError(ErrorCode::OutOfDomain, "|r'| >= 1");
  const double m = std::sqrt(m2);
  return {m, -r.d1 * r.d2 / m};
}

// (x1', x2') from the angle reduction.
std::pair<double, double> planar_velocity(Ambient amb, double s, double theta) {
  if (amb == Ambient::Elliptic) return {s * std::cosh(theta), s * std::sinh(theta)};
  return {s * std::cos(theta), s * std::sin(theta)};
}

std::vector<double> uniform_nodes(const ConstructOptions& opt) {
  const Interval d = opt.domain;
  if (!(d.hi > d.lo) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
    throw GeometryError(ErrorCode::InvalidSpec, "construction domain must satisfy lo < hi");
  if (!(opt.step > 0.0)) throw GeometryError(ErrorCode::InvalidSpec, "construction step must be positive");
  if (opt.branch != 1 && opt.branch != -1) throw GeometryError(ErrorCode::InvalidSpec, "branch must be +1 or -1");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::round(d.length() / opt.step)));
  std::vector<double> u(n + 1);
  for (std::size_t i = 0; i <= n; ++i) u[i] = d.lo + d.length() * static_cast<double>(i) / static_cast<double>(n);
  return u;
}

// RK4 for (theta, x1, x2) with theta' a function of u alone.
struct AngleTrack {
  TabulatedSamples samples;
  std::vector<double> theta, theta_prime;
};

AngleTrack integrate_angle(Ambient amb, const RSpec& rs, const std::vector<double>& u, std::size_t first,
                           std::size_t last, const AngleStart& start,
                           const std::function<double(double, std::size_t)>& theta_prime) {
  AngleTrack out;
  double th = start.theta0, x1 = start.x1_0, x2 = start.x2_0;
  auto rhs = [&](double uu, double t, double tp) {
    const Speed sp = speed(amb, rs.eval(uu));
    const auto [a, b] = planar_velocity(amb, sp.s, t);
    return std::array<double, 3>{tp, a, b};
  };
  for (std::size_t i = first;; ++i) {
    const double tp0 = theta_prime(u[i], i);
    out.samples.u.push_back(u[i]);
    out.samples.x1.push_back(x1);
    out.samples.x2.push_back(x2);
    out.samples.r.push_back(rs.eval(u[i]).r);
    out.theta.push_back(th);
    out.theta_prime.push_back(tp0);
    if (i == last) break;
    const double h = u[i + 1] - u[i];
    const double um = u[i] + 0.5 * h;
    const double tpm = theta_prime(um, i);
    const double tp1 = theta_prime(u[i + 1], i + 1);
    const auto k1 = rhs(u[i], th, tp0);
    const auto k2 = rhs(um, th + 0.5 * h * k1[0], tpm);
    const auto k3 = rhs(um, th + 0.5 * h * k2[0], tpm);
    const auto k4 = rhs(u[i + 1], th + h * k3[0], tp1);
    th += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    x1 += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    x2 += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  }
  return out;
}

double condition_value(ConstructTarget t, const rotational::ClosedFormInvariants& cf, std::optional<double> k0) {
  switch (t) {
    case ConstructTarget::Chen: return std::abs(cf.chen_condition);
    case ConstructTarget::ConstantK: return std::abs(cf.k - *k0);
    case ConstructTarget::Minimal: return std::abs(cf.minimal_condition);
  }
  return 0.0;
}

// Re-evaluates every piece through the curve, rotational and surface modules.
void post_hoc(ConstructionReport& rep) {
  std::vector<double> ks, Ks;
  for (ConstructedPiece& p : rep.pieces) {
    const TabulatedSamples& s = std::get<TabulatedSamples>(p.profile.origin());
    const SurfacePatch patch = rotational::build(p.profile);
    for (double u : s.u) {
      if (!p.profile.domain().contains(u)) continue;
      const auto cf = rotational::closed_form_invariants(p.profile, u);
      const double res = condition_value(rep.target, cf, rep.k_target);
      if (res > p.residual_condition) {
        p.residual_condition = res;
        p.worst_u = u;
      }
      const InvariantSet inv = evaluate_invariants(patch, u, 0.0);
      const double hh = euclid_inner(inv.H, inv.H);
      if (inv.lambda && std::abs(inv.H_norm2) > 1e-6 * hh)
        rep.max_abs_lambda = std::max(rep.max_abs_lambda, std::abs(*inv.lambda));
      rep.max_H_norm = std::max(rep.max_H_norm, std::sqrt(hh));
      ks.push_back(inv.k);
      Ks.push_back(inv.K);
    }
    p.residual_unit_speed = validate(p.profile, s.size()).max_unit_speed_residual;
    if (p.residual_condition >= rep.residual_condition) {
      rep.residual_condition = p.residual_condition;
      rep.worst_u = p.worst_u;
    }
    rep.residual_unit_speed = std::max(rep.residual_unit_speed, p.residual_unit_speed);
  }
  auto stats = [](const std::vector<double>& x, double& mean, double& sd) {
    if (x.empty()) return;
    mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double q = 0.0;
    for (double v : x) q += (v - mean) * (v - mean);
    sd = std::sqrt(q / static_cast<double>(x.size()));
  };
  stats(ks, rep.k_mean, rep.k_std);
  stats(Ks, rep.K_mean, rep.K_std);
  rep.constant_K = !Ks.empty() && rep.K_std <= 1e-6 * (1.0 + std::abs(rep.K_mean));
}

ConstructedPiece make_piece(Ambient amb, AngleTrack&& track) {
  ProfileCurve c = ProfileCurve::from_samples(amb, std::move(track.samples));
  return ConstructedPiece{std::move(c), std::move(track.theta), std::move(track.theta_prime), 0.0, 0.0, 0.0};
}

}  // namespace

ChenQuadratic chen_quadratic(Ambient amb, const RJet& r) {
  const Speed sp = speed(amb, r);
  const double r2 = r.d2 * r.d2;
  double A = 0.0, B = 0.0, s = 1.0;
  switch (amb) {
    case Ambient::Hyperbolic: A = sp.ds * sp.ds - r2; B = sp.s * sp.s; break;
    case Ambient::Elliptic: A = r2 + sp.ds * sp.ds; B = -sp.s * sp.s; break;
    case Ambient::Euclidean: A = sp.ds * sp.ds + r2; B = sp.s * sp.s; s = -1.0; break;
  }
  ChenQuadratic q;
  const double rr = r.r * r.r;
  q.a = rr * B * B;
  q.b = 2.0 * rr * A * B + s * B * B;
  q.c = rr * A * A - r2;
  q.accel_offset = A;
  q.accel_slope = B;
  double disc = q.b * q.b - 4.0 * q.a * q.c;
  if (disc < 0.0 && disc >= -1e-12 * q.b * q.b) disc = 0.0;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (q.b + std::copysign(sq, q.b));
    if (qq != 0.0) {
      q.roots = {qq / q.a, q.c / qq};
    } else {
      q.roots = {0.0, 0.0};
    }
    std::sort(q.roots.begin(), q.roots.end());
  }
  return q;
}

std::vector<double> admissible_roots(const ChenQuadratic& q) {
  std::vector<double> out;
  for (double w : q.roots) {
    if (w < 0.0 && w >= -1e-12 * (1.0 + std::abs(q.b / q.a))) w = 0.0;
    if (w < 0.0) continue;
    const double accel = q.accel_offset + q.accel_slope * w;
    const double scale = std::abs(q.accel_offset) + std::abs(q.accel_slope * w);
    if (std::abs(accel) <= std::max(kAccelerationTol, 1e-8 * scale)) continue;
    out.push_back(w);
  }
  return out;
}

ConstructionReport construct_chen_profile(Ambient amb, const RSpec& rs, const ConstructOptions& opt) {
  const std::vector<double> u = uniform_nodes(opt);
  ConstructionReport rep;
  rep.target = ConstructTarget::Chen;
  rep.ambient = amb;
  rep.branch = opt.branch;

  auto roots_at = [&](double uu) -> std::vector<double> {
    try {
      return admissible_roots(chen_quadratic(amb, rs.eval(uu)));
    } catch (const GeometryError& e) {
      if (e.code() == ErrorCode::OutOfDomain) return {};
      throw;
    }
  };
  // Node i is usable when it has a root; the step i -> i+1 also needs one at
  // the midpoint.
  const std::size_t n = u.size();
  std::vector<char> node_ok(n), step_ok(n, 0);
  for (std::size_t i = 0; i < n; ++i) node_ok[i] = !roots_at(u[i]).empty();
  for (std::size_t i = 0; i + 1 < n; ++i)
    step_ok[i] = node_ok[i] && node_ok[i + 1] && !roots_at(0.5 * (u[i] + u[i + 1])).empty();

  std::size_t i = 0;
  while (i < n) {
    if (!node_ok[i]) {
      std::size_t j = i;
      while (j + 1 < n && !node_ok[j + 1]) ++j;
      rep.failures.push_back({u[i], u[j]});
      i = j + 1;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && step_ok[j]) ++j;
    if (j - i + 1 >= kTabulatedStencil) {
      double prev_w = NAN;
      auto tp = [&](double uu, std::size_t) {
        const ChenQuadratic q = chen_quadratic(amb, rs.eval(uu));
        const std::vector<double> ws = admissible_roots(q);
        double w = ws.front();
        if (std::isfinite(prev_w)) {
          for (double c : ws)
            if (std::abs(c - prev_w) < std::abs(w - prev_w)) w = c;
        }
        prev_w = w;
        rep.max_root_residual = std::max(rep.max_root_residual, std::abs(q.value(w)) / (1.0 + q.scale()));
        return opt.branch * std::sqrt(w);
      };
      rep.pieces.push_back(make_piece(amb, integrate_angle(amb, rs, u, i, j, opt.start, tp)));
    } else {
      rep.failures.push_back({u[i], u[j]});
    }
    i = j + 1;
  }
  if (rep.pieces.empty())
    throw GeometryError(ErrorCode::NoAdmissibleRoot, "no admissible root of the Chen condition for r = " +
                                                         rs.to_string() + " on [" + format_double(opt.domain.lo) +
                                                         ", " + format_double(opt.domain.hi) + "]");
  post_hoc(rep);
  return rep;
}

ConstructionReport construct_constant_k_profile(Ambient amb, const RSpec& rs, double k0, const ConstructOptions& opt) {
  if (!(k0 < 0.0)) throw GeometryError(ErrorCode::InvalidSpec, "k0 must be negative");
  const std::vector<double> u = uniform_nodes(opt);
  ConstructionReport rep;
  rep.target = ConstructTarget::ConstantK;
  rep.ambient = amb;
  rep.branch = opt.branch;
  rep.k_target = k0;
  const double a = std::sqrt(-k0);

  auto theta_prime = [&](double uu) {
    const RJet r = rs.eval(uu);
    Speed sp;
    try {
      sp = speed(amb, r);
    } catch (const GeometryError&) {
      throw GeometryError(ErrorCode::PreconditionViolation,
                          "r(u) violates r > 0 or |r'| < 1 at u = " + format_double(uu));
    }
    return opt.branch * r.r * a / (sp.s * sp.s);
  };
  int sign = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double tp = theta_prime(u[i]);
    const ChenQuadratic q = chen_quadratic(amb, rs.eval(u[i]));
    const double accel = q.accel_offset + q.accel_slope * tp * tp;
    const int s = accel > 0.0 ? 1 : -1;
    if (std::abs(accel) <= kAccelerationTol || (sign != 0 && s != sign))
      throw GeometryError(ErrorCode::DegenerateAcceleration,
                          "<t',t'> vanishes or changes sign near u = " + format_double(u[i]));
    sign = s;
  }
  if (u.size() < kTabulatedStencil)
    throw GeometryError(ErrorCode::InvalidSpec, "domain/step give fewer samples than the interpolation stencil");
  rep.pieces.push_back(make_piece(
      amb, integrate_angle(amb, rs, u, 0, u.size() - 1, opt.start, [&](double uu, std::size_t) { return theta_prime(uu); })));
  post_hoc(rep);
  return rep;
}

ConstructionReport construct_minimal_profile(Ambient amb, double r0, double r0p, const ConstructOptions& opt) {
  if (!(r0 > 0.0)) throw GeometryError(ErrorCode::InvalidSpec, "r0 must be positive");
  const bool hyp = amb == Ambient::Hyperbolic;
  if (!hyp && !(std::abs(r0p) < 1.0)) throw GeometryError(ErrorCode::InvalidSpec, "|r0p| must be < 1");
  const std::vector<double> u = uniform_nodes(opt);
  ConstructionReport rep;
  rep.target = ConstructTarget::Minimal;
  rep.ambient = amb;
  rep.branch = 1;

  using State = std::array<double, 3>;  // r, r', x1
  auto f = [hyp](const State& y) {
    const double q = hyp ? 1.0 + y[1] * y[1] : 1.0 - y[1] * y[1];
    return State{y[1], (hyp ? -q : q) / y[0], std::sqrt(std::max(q, 0.0))};
  };
  auto healthy = [&](const State& y) {
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || !(y[0] > 0.1 * r0)) return false;
    return hyp ? std::abs(y[1]) < 5.0 : std::abs(y[1]) < 1.0 - 1e-3;
  };

  TabulatedSamples s;
  State y{r0, r0p, opt.start.x1_0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    s.u.push_back(u[i]);
    s.x1.push_back(y[2]);
    s.x2.push_back(opt.start.x2_0);
    s.r.push_back(y[0]);
    if (i + 1 == u.size()) break;
    const double h = u[i + 1] - u[i];
    const State k1 = f(y);
    State t;
    for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k1[c];
    const State k2 = f(t);
    for (int c = 0; c < 3; ++c) t[c] = y[c] + 0.5 * h * k2[c];
    const State k3 = f(t);
    for (int c = 0; c < 3; ++c) t[c] = y[c] + h * k3[c];
    const State k4 = f(t);
    State next;
    for (int c = 0; c < 3; ++c) next[c] = y[c] + h / 6.0 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    if (!healthy(next)) {
      rep.truncated_at = u[i];
      rep.failures.push_back({u[i], opt.domain.hi});
      break;
    }
    y = next;
  }
  if (s.size() < kTabulatedStencil)
    throw GeometryError(ErrorCode::BlowUp, "minimal profile degenerates before u = " +
                                               format_double(rep.truncated_at.value_or(opt.domain.hi)));
  ProfileCurve c = ProfileCurve::from_samples(amb, std::move(s));
  rep.pieces.push_back(ConstructedPiece{std::move(c), {}, {}, 0.0, 0.0, 0.0});
  post_hoc(rep);
  return rep;
}

}  // namespace chenrot
