#include "chenrot/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"
#include "chenrot/quadrature.hpp"
#include "chenrot/rspec.hpp"

namespace chenrot {

const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::Hyperbolic: return "hyperbolic";
    case Ambient::Elliptic: return "elliptic";
    case Ambient::Euclidean: return "euclidean";
  }
  return "?";
}

Ambient parse_ambient(const std::string& s) {
  if (s == "hyperbolic") return Ambient::Hyperbolic;
  if (s == "elliptic") return Ambient::Elliptic;
  if (s == "euclidean") return Ambient::Euclidean;
  throw GeometryError(ErrorCode::InvalidSpec, "unknown ambient '" + s + "'");
}

Vec3 metric_signs(Ambient a) {
  switch (a) {
    case Ambient::Hyperbolic: return {{1.0, 1.0, -1.0}};
    case Ambient::Elliptic: return {{1.0, -1.0, 1.0}};
    case Ambient::Euclidean: return {{1.0, 1.0, 1.0}};
  }
  return {};
}

double inner3(const Vec3& a, const Vec3& b, Ambient amb) {
  const Vec3 g = metric_signs(amb);
  return g[0] * a[0] * b[0] + g[1] * a[1] * b[1] + g[2] * a[2] * b[2];
}

namespace {

// ---------------------------------------------------------------------------
// Analytic families

class FunctionSource final : public CurveSource {
 public:
  explicit FunctionSource(std::function<CurveJet(double)> f) : f_(std::move(f)) {}
  CurveJet jet(double u) const override { return f_(u); }

 private:
  std::function<CurveJet(double)> f_;
};

CurveJet make_jet(double u, Vec3 p, Vec3 d1, Vec3 d2, Vec3 d3) { return CurveJet{u, p, d1, d2, d3}; }

// Planar profile (x1, 0, r) with x1 fixed by the unit-speed constraint:
// x1' = sqrt(1 + r'^2) (hyperbolic) or sqrt(1 - r'^2) (elliptic, Euclidean).
CurveJet planar_jet(const RSpec& rs, Ambient amb, double u) {
  const double sgn = amb == Ambient::Hyperbolic ? 1.0 : -1.0;
  auto speed = [&](double t) {
    const RJet r = rs.eval(t);
    const double q = 1.0 + sgn * r.d1 * r.d1;
    if (!(q > 0.0))
      throw GeometryError(ErrorCode::OutOfDomain, "|r'| >= 1 leaves no spacelike unit-speed planar profile");
    return std::sqrt(q);
  };
  const RJet r = rs.eval(u);
  const double s = speed(u);
  const double s1 = sgn * r.d1 * r.d2 / s;
  const double s2 = (sgn * (r.d2 * r.d2 + r.d1 * r.d3) - s1 * s1) / s;
  const double x1 = integrate_gauss_legendre(speed, 0.0, u);
  return make_jet(u, {{x1, 0.0, r.r}}, {{s, 0.0, r.d1}}, {{s1, 0.0, r.d2}}, {{s2, 0.0, r.d3}});
}

[[noreturn]] void bad_family(const std::string& msg) { throw GeometryError(ErrorCode::InvalidSpec, msg); }

struct FamilyBuild {
  std::function<CurveJet(double)> jet;
  Interval domain;
};

FamilyBuild build_family(Ambient amb, const FamilySpec& spec) {
  const std::string& name = spec.name;
  if (name == "mink-pseudocircle") {
    if (amb != Ambient::Hyperbolic) bad_family("mink-pseudocircle requires the hyperbolic ambient");
    return {[](double u) {
              const double c = std::cosh(u), s = std::sinh(u);
              return make_jet(u, {{s, 0, c}}, {{c, 0, s}}, {{s, 0, c}}, {{c, 0, s}});
            },
            {-2.0, 2.0}};
  }
  if (name == "catenary") {
    if (amb == Ambient::Hyperbolic) bad_family("catenary requires the elliptic or euclidean ambient");
    return {[](double u) {
              const double q = u * u + 1.0, r = std::sqrt(q), r3 = q * r, r5 = q * q * r;
              return make_jet(u, {{std::asinh(u), 0, r}}, {{1.0 / r, 0, u / r}}, {{-u / r3, 0, 1.0 / r3}},
                              {{(2.0 * u * u - 1.0) / r5, 0, -3.0 * u / r5}});
            },
            {-2.0, 2.0}};
  }
  if (name == "constant-r-theta" || name == "euclid-circle") {
    const double R = spec.param("R", 1.0);
    double w = spec.param("omega", 1.0);
    if (name == "euclid-circle") {
      if (amb == Ambient::Elliptic) bad_family("euclid-circle requires the euclidean or hyperbolic ambient");
      const double a = spec.param("a", 1.0);
      if (!(a > 0.0)) bad_family("euclid-circle needs a > 0");
      w = 1.0 / a;
    }
    if (!(R > 0.0) || w == 0.0) bad_family(name + " needs R > 0 and a nonzero rate");
    if (amb == Ambient::Elliptic) {
      return {[R, w](double u) {
                const double c = std::cosh(w * u), s = std::sinh(w * u);
                return make_jet(u, {{s / w, c / w, R}}, {{c, s, 0}}, {{w * s, w * c, 0}},
                                {{w * w * c, w * w * s, 0}});
              },
              {-2.0, 2.0}};
    }
    return {[R, w](double u) {
              const double c = std::cos(w * u), s = std::sin(w * u);
              return make_jet(u, {{c / w, s / w, R}}, {{-s, c, 0}}, {{-w * c, -w * s, 0}},
                              {{w * w * s, -w * w * c, 0}});
            },
            {-2.0, 2.0}};
  }
  if (name == "helix") {
    const double a = spec.param("a", 2.0), b = spec.param("b", 1.0), r0 = spec.param("r0", 3.0);
    double q = amb == Ambient::Hyperbolic ? a * a - b * b : a * a + b * b;
    if (!(a > 0.0) || !(q > 0.0)) bad_family("helix needs a > |b| (hyperbolic) or a > 0");
    const double w = 1.0 / std::sqrt(q);
    if (amb == Ambient::Elliptic) {
      return {[a, b, r0, w](double u) {
                const double c = std::cosh(w * u), s = std::sinh(w * u);
                return make_jet(u, {{a * s, a * c, r0 + b * w * u}}, {{a * w * c, a * w * s, b * w}},
                                {{a * w * w * s, a * w * w * c, 0}}, {{a * w * w * w * c, a * w * w * w * s, 0}});
              },
              {-1.0, 1.0}};
    }
    return {[a, b, r0, w](double u) {
              const double c = std::cos(w * u), s = std::sin(w * u);
              return make_jet(u, {{a * c, a * s, r0 + b * w * u}}, {{-a * w * s, a * w * c, b * w}},
                              {{-a * w * w * c, -a * w * w * s, 0}}, {{a * w * w * w * s, -a * w * w * w * c, 0}});
            },
            {-1.0, 1.0}};
  }
  if (name == "polynomial-r") {
    std::vector<double> coeffs;
    for (int i = 0; i < 10; ++i) coeffs.push_back(spec.param("c" + std::to_string(i), 0.0));
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    for (const auto& [k, v] : spec.params) {
      if (k.size() != 2 || k[0] != 'c' || k[1] < '0' || k[1] > '9')
        bad_family("polynomial-r accepts only parameters c0..c9, got '" + k + "'");
    }
    RSpec rs = RSpec::polynomial(coeffs);
    return {[rs, amb](double u) { return planar_jet(rs, amb, u); }, {-1.0, 1.0}};
  }
  bad_family("unknown profile family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Tabulated samples: local polynomial interpolation over kTabulatedStencil
// nearest nodes, derivatives from Fornberg weights.

void fornberg_weights(double z, const double* x, std::size_t n, int m, double (*c)[4]) {
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) c[i][k] = 0.0;
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
}

class TabulatedSource final : public CurveSource {
 public:
  explicit TabulatedSource(TabulatedSamples s) : s_(std::move(s)) {
    // Dense samples are thinned to a node spacing near kTabulatedSpacing so
    // that rounding in the data is not amplified by the derivative weights.
    const std::size_t n = s_.size();
    const double mean = (s_.u.back() - s_.u.front()) / static_cast<double>(n - 1);
    const auto want = static_cast<std::size_t>(std::max(1.0, std::round(kTabulatedSpacing / mean)));
    stride_ = std::clamp<std::size_t>(want, 1, (n - 1) / (kTabulatedStencil - 1));
  }

  CurveJet jet(double u) const override {
    const std::size_t n = s_.size();
    constexpr std::size_t w = kTabulatedStencil;
    const std::size_t span = (w - 1) * stride_;
    const auto it = std::upper_bound(s_.u.begin(), s_.u.end(), u);
    const std::size_t below = it == s_.u.begin() ? 0 : static_cast<std::size_t>(it - s_.u.begin()) - 1;
    const std::size_t back = span / 2;
    std::size_t start = below >= back ? below - back : 0;
    start = std::min(start, n - 1 - span);
    double x[w], c[w][4];
    for (std::size_t i = 0; i < w; ++i) x[i] = s_.u[start + i * stride_];
    fornberg_weights(u, x, w, 3, c);
    CurveJet j;
    j.u = u;
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t q = start + i * stride_;
      const Vec3 p{{s_.x1[q], s_.x2[q], s_.r[q]}};
      j.p += c[i][0] * p;
      j.d1 += c[i][1] * p;
      j.d2 += c[i][2] * p;
      j.d3 += c[i][3] * p;
    }
    return j;
  }

 private:
  TabulatedSamples s_;
  std::size_t stride_ = 1;
};

void check_samples(const TabulatedSamples& s) {
  const std::size_t n = s.u.size();
  if (s.x1.size() != n || s.x2.size() != n || s.r.size() != n)
    throw GeometryError(ErrorCode::InvalidSpec, "sample arrays differ in length");
  if (n < kTabulatedStencil)
    throw GeometryError(ErrorCode::InsufficientSamples,
                        "need at least " + std::to_string(kTabulatedStencil) + " samples, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.u[i]) || !std::isfinite(s.x1[i]) || !std::isfinite(s.x2[i]) || !std::isfinite(s.r[i]))
      throw GeometryError(ErrorCode::InvalidSpec, "non-finite sample");
    if (i > 0 && !(s.u[i] > s.u[i - 1]))
      throw GeometryError(ErrorCode::InvalidSpec, "sample parameters must be strictly increasing");
  }
}

double max_node_speed_residual(Ambient amb, const TabulatedSamples& s) {
  TabulatedSource src(s);
  double worst = 0.0;
  for (double u : s.u) {
    const CurveJet j = src.jet(u);
    worst = std::max(worst, std::abs(inner3(j.d1, j.d1, amb) - 1.0));
  }
  return worst;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"mink-pseudocircle", "catenary", "euclid-circle", "constant-r-theta", "helix", "polynomial-r"};
}

ProfileCurve ProfileCurve::from_family(Ambient ambient, const FamilySpec& spec, std::optional<Interval> domain) {
  FamilyBuild fb = build_family(ambient, spec);
  ProfileCurve c;
  c.ambient_ = ambient;
  c.domain_ = domain.value_or(fb.domain);
  if (!(c.domain_.hi > c.domain_.lo)) throw GeometryError(ErrorCode::InvalidSpec, "empty profile domain");
  c.source_ = std::make_shared<FunctionSource>(std::move(fb.jet));
  c.origin_ = spec;
  return c;
}

ProfileCurve ProfileCurve::from_samples(Ambient ambient, TabulatedSamples samples, std::optional<Interval> domain,
                                        Reparametrize mode) {
  check_samples(samples);
  const bool resample =
      mode == Reparametrize::Always || (mode == Reparametrize::Auto && max_node_speed_residual(ambient, samples) > 1e-6);
  if (resample) {
    samples = reparametrize_by_arc_length(ambient, samples);
    // The old parameter range is meaningless after resampling.
    domain.reset();
  }
  ProfileCurve c;
  c.ambient_ = ambient;
  const Interval full{samples.u.front(), samples.u.back()};
  c.domain_ = domain.value_or(full);
  if (!(c.domain_.hi > c.domain_.lo) || c.domain_.lo < full.lo - 1e-12 || c.domain_.hi > full.hi + 1e-12)
    throw GeometryError(ErrorCode::InvalidSpec, "domain lies outside the sample range");
  c.source_ = std::make_shared<TabulatedSource>(samples);
  c.origin_ = std::move(samples);
  return c;
}

CurveJet ProfileCurve::jet(double u) const {
  const double slack = 1e-12 * (1.0 + std::abs(domain_.lo) + std::abs(domain_.hi));
  if (!std::isfinite(u) || !domain_.contains(u, slack))
    throw GeometryError(ErrorCode::OutOfDomain, "u = " + format_double(u) + " outside [" + format_double(domain_.lo) +
                                                    ", " + format_double(domain_.hi) + "]");
  CurveJet j = source_->jet(u + shift_);
  j.u = u;
  return j;
}

std::string ProfileCurve::describe() const {
  std::string s = std::string(to_string(ambient_)) + " ";
  if (const auto* f = std::get_if<FamilySpec>(&origin_)) {
    s += f->name;
    for (const auto& [k, v] : f->params) s += " " + k + "=" + format_double(v);
  } else {
    s += "tabulated(" + std::to_string(std::get<TabulatedSamples>(origin_).size()) + " samples)";
  }
  if (shift_ != 0.0) s += " shift=" + format_double(shift_);
  return s;
}

ProfileCurve ProfileCurve::shifted(double delta) const {
  ProfileCurve c = *this;
  c.shift_ += delta;
  c.domain_ = {domain_.lo - delta, domain_.hi - delta};
  return c;
}

ProfileCurve ProfileCurve::restricted(Interval sub) const {
  if (!(sub.hi > sub.lo) || sub.lo < domain_.lo || sub.hi > domain_.hi)
    throw GeometryError(ErrorCode::OutOfDomain, "restriction leaves the profile domain");
  ProfileCurve c = *this;
  c.domain_ = sub;
  return c;
}

FrenetApparatus frenet(const CurveJet& j, Ambient amb, double tol) {
  const double a = inner3(j.d2, j.d2, amb);
  if (!(std::abs(a) > tol))
    throw GeometryError(ErrorCode::InflectionPoint, "|<t',t'>| = " + format_double(std::abs(a)) + " at u = " +
                                                        format_double(j.u));
  FrenetApparatus f;
  f.epsilon = a > 0.0 ? 1 : -1;
  f.kappa = std::sqrt(std::abs(a));
  f.t = j.d1;
  f.n = j.d2 / f.kappa;
  // Metric-dual cross product: orthogonal to t and n under the 3-metric.
  const Vec3 g = metric_signs(amb);
  const Vec3& t = f.t;
  const Vec3& n = f.n;
  Vec3 b{{g[0] * (t[1] * n[2] - t[2] * n[1]), g[1] * (t[2] * n[0] - t[0] * n[2]),
          g[2] * (t[0] * n[1] - t[1] * n[0])}};
  const double bb = inner3(b, b, amb);
  b = b / std::sqrt(std::abs(bb));
  const double orient = t[0] * (n[1] * b[2] - n[2] * b[1]) - t[1] * (n[0] * b[2] - n[2] * b[0]) +
                        t[2] * (n[0] * b[1] - n[1] * b[0]);
  if (orient < 0.0) b = -b;
  f.b = b;
  f.tau = inner3(j.d3, b, amb) / (f.kappa * inner3(b, b, amb));
  return f;
}

FrenetApparatus frenet(const ProfileCurve& c, double u, double tol) { return frenet(c.jet(u), c.ambient(), tol); }

double kappa1(const ProfileCurve& c, double u) { return kappa1(c.jet(u)); }

ValidationReport validate(const ProfileCurve& c, std::size_t samples, double accel_tol) {
  if (samples < 2) throw GeometryError(ErrorCode::PreconditionViolation, "validate needs at least 2 samples");
  ValidationReport rep;
  rep.min_r = INFINITY;
  rep.min_abs_accel = INFINITY;
  bool seen_pos = false, seen_neg = false;
  const Interval d = c.domain();
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = d.lo + d.length() * static_cast<double>(i) / static_cast<double>(samples - 1);
    CurveJet j;
    try {
      j = c.jet(u);
    } catch (const GeometryError& e) {
      rep.pass = false;
      rep.failures.push_back(e.what());
      continue;
    }
    rep.max_unit_speed_residual = std::max(rep.max_unit_speed_residual, std::abs(inner3(j.d1, j.d1, c.ambient()) - 1.0));
    rep.min_r = std::min(rep.min_r, j.p[2]);
    const double a = inner3(j.d2, j.d2, c.ambient());
    rep.min_abs_accel = std::min(rep.min_abs_accel, std::abs(a));
    if (a > accel_tol) seen_pos = true;
    if (a < -accel_tol) seen_neg = true;
  }
  rep.accel_sign_change = seen_pos && seen_neg;
  if (rep.max_unit_speed_residual > 1e-6) {
    rep.pass = false;
    rep.failures.push_back("unit-speed residual " + format_double(rep.max_unit_speed_residual) + " exceeds 1e-6");
  }
  if (!(rep.min_r > 0.0)) {
    rep.pass = false;
    rep.failures.push_back("r <= 0 detected (min r = " + format_double(rep.min_r) + ")");
  }
  if (!(rep.min_abs_accel > accel_tol)) {
    rep.pass = false;
    rep.failures.push_back("|<t',t'>| vanishes (min = " + format_double(rep.min_abs_accel) + ")");
  }
  if (rep.accel_sign_change) {
    rep.pass = false;
    rep.failures.push_back("<t',t'> changes sign on the domain");
  }
  return rep;
}

TabulatedSamples reparametrize_by_arc_length(Ambient ambient, const TabulatedSamples& samples) {
  check_samples(samples);
  const TabulatedSource src(samples);
  auto speed = [&](double u) {
    const CurveJet j = src.jet(u);
    const double q = inner3(j.d1, j.d1, ambient);
    if (!(q > 0.0)) throw GeometryError(ErrorCode::InvalidSpec, "tabulated curve is not spacelike");
    return std::sqrt(q);
  };
  const std::size_t n = samples.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    s[i] = s[i - 1] + integrate_adaptive_simpson(speed, samples.u[i - 1], samples.u[i], 1e-10);

  TabulatedSamples out;
  const double total = s.back();
  const double u0 = samples.u.front();
  for (std::size_t k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    std::size_t i = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), target) - s.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    // Newton on arc length from node i, bracketed by the node interval.
    double lo = samples.u[i], hi = samples.u[i + 1];
    double u = lo + (hi - lo) * (target - s[i]) / std::max(s[i + 1] - s[i], 1e-300);
    for (int it = 0; it < 50; ++it) {
      const double f = s[i] + integrate_adaptive_simpson(speed, samples.u[i], u, 1e-12) - target;
      if (f > 0.0) hi = u; else lo = u;
      double next = u - f / speed(u);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - u) <= 1e-15 * (1.0 + std::abs(u))) {
        u = next;
        break;
      }
      u = next;
    }
    const CurveJet j = src.jet(u);
    out.u.push_back(u0 + target);
    out.x1.push_back(j.p[0]);
    out.x2.push_back(j.p[1]);
    out.r.push_back(j.p[2]);
  }
  return out;
}

}  // namespace chenrot
