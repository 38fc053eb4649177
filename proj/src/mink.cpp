#include "chenrot/mink.hpp"

#include <algorithm>
#include <utility>

#include "chenrot/error.hpp"

namespace chenrot {

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::Timelike: return "Timelike";
    case CausalClass::Lightlike: return "Lightlike";
  }
  return "?";
}

double default_causal_tol(const Vec4& v) { return 1e-9 * (1.0 + l1_norm(v)); }

CausalClass causal_character(const Vec4& v, double tol) {
  const double q = inner(v, v);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  // Rows a, b, c, d; expansion by 2x2 minors of the first two rows.
  auto m2 = [](const Vec4& p, const Vec4& q, int i, int j) { return p[i] * q[j] - p[j] * q[i]; };
  const double s0 = m2(a, b, 0, 1), s1 = m2(a, b, 0, 2), s2 = m2(a, b, 0, 3);
  const double s3 = m2(a, b, 1, 2), s4 = m2(a, b, 1, 3), s5 = m2(a, b, 2, 3);
  const double c5 = m2(c, d, 2, 3), c4 = m2(c, d, 1, 3), c3 = m2(c, d, 1, 2);
  const double c2 = m2(c, d, 0, 3), c1 = m2(c, d, 0, 2), c0 = m2(c, d, 0, 1);
  return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

namespace {

// Symmetric 2x2 eigen-decomposition; returns (eigenvalues, column eigenvectors)
// with eigenvalues in descending order.
struct Eig2 {
  double val[2];
  double vec[2][2];  // vec[k] is the k-th eigenvector
};

Eig2 sym_eig2(double a, double b, double d) {
  const double theta = 0.5 * std::atan2(2.0 * b, a - d);
  const double cs = std::cos(theta), sn = std::sin(theta);
  Eig2 e{};
  e.val[0] = a * cs * cs + 2.0 * b * cs * sn + d * sn * sn;
  e.val[1] = a * sn * sn - 2.0 * b * cs * sn + d * cs * cs;
  e.vec[0][0] = cs;
  e.vec[0][1] = sn;
  e.vec[1][0] = -sn;
  e.vec[1][1] = cs;
  if (e.val[1] > e.val[0]) {
    std::swap(e.val[0], e.val[1]);
    std::swap(e.vec[0][0], e.vec[1][0]);
    std::swap(e.vec[0][1], e.vec[1][1]);
  }
  return e;
}

Vec4 sign_normalized(Vec4 v) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(v[i]) > std::abs(v[imax]) + 1e-14) imax = i;
  return v[imax] < 0.0 ? -v : v;
}

}  // namespace

NormalFrame orthonormal_normal_frame(const Vec4& zu, const Vec4& zv, Signature sig) {
  const double g00 = inner(zu, zu, sig), g01 = inner(zu, zv, sig), g11 = inner(zv, zv, sig);
  const double gram = g00 * g11 - g01 * g01;
  const double scale = euclid_inner(zu, zu) * euclid_inner(zv, zv);
  if (!(std::abs(gram) > 1e-12 * scale) || scale == 0.0)
    throw GeometryError(ErrorCode::DegenerateTangentPlane, "tangent Gram determinant vanishes");
  if (gram < 0.0 || g00 <= 0.0)
    throw GeometryError(ErrorCode::NormalSpaceNotLorentzian,
                        "tangent plane is not spacelike, normal plane has wrong signature");

  // Tangential component of e_i and the residual normal part.
  auto tangential = [&](const Vec4& w) {
    const double p = inner(w, zu, sig), q = inner(w, zv, sig);
    const double a = (g11 * p - g01 * q) / gram;
    const double b = (g00 * q - g01 * p) / gram;
    return a * zu + b * zv;
  };

  std::array<std::pair<double, std::size_t>, 4> score;
  std::array<Vec4, 4> normal_part;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec4 t = tangential(basis4(i));
    normal_part[i] = basis4(i) - t;
    score[i] = {-euclid_norm(normal_part[i]), i};
  }
  std::stable_sort(score.begin(), score.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  // Seed with the two basis vectors of largest normal part, falling back to the
  // next pair when the seeds are (nearly) dependent in the normal plane.
  Vec4 w1, w2;
  bool found = false;
  const std::pair<int, int> order[6] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  for (const auto& [i, j] : order) {
    const Vec4& a = normal_part[score[i].second];
    const Vec4& b = normal_part[score[j].second];
    const double ea = euclid_inner(a, a), eb = euclid_inner(b, b), eab = euclid_inner(a, b);
    if (ea * eb - eab * eab > 1e-6 * ea * eb) {
      w1 = a;
      w2 = b;
      found = true;
      break;
    }
  }
  if (!found) throw GeometryError(ErrorCode::DegenerateTangentPlane, "cannot complete basis");

  NormalFrame f;
  f.signature = sig;
  f.epsilon = 1;
  if (sig == Signature::Euclidean) {
    f.n1 = sign_normalized(w1 / std::sqrt(euclid_inner(w1, w1)));
    Vec4 r = w2 - euclid_inner(w2, f.n1) * f.n1;
    f.n2 = r / std::sqrt(euclid_inner(r, r));
  } else {
    // Generalized eigenproblem h a = mu e a, h the Minkowski Gram and e the
    // Euclidean Gram of (w1, w2). Signature (1,1) <=> one root of each sign.
    const double e00 = euclid_inner(w1, w1), e01 = euclid_inner(w1, w2), e11 = euclid_inner(w2, w2);
    const double h00 = inner(w1, w1), h01 = inner(w1, w2), h11 = inner(w2, w2);
    // e = R^T R with R upper triangular.
    const double r00 = std::sqrt(e00), r01 = e01 / r00, r11 = std::sqrt(e11 - r01 * r01);
    // C = R^{-T} h R^{-1}
    const double i00 = 1.0 / r00, i01 = -r01 / (r00 * r11), i11 = 1.0 / r11;
    const double c00 = i00 * i00 * h00;
    const double c01 = i00 * (i01 * h00 + i11 * h01);
    const double c11 = i01 * i01 * h00 + 2.0 * i01 * i11 * h01 + i11 * i11 * h11;
    const Eig2 eg = sym_eig2(c00, c01, c11);
    const double tol = 1e-10;
    if (!(eg.val[0] > tol && eg.val[1] < -tol))
      throw GeometryError(ErrorCode::NormalSpaceNotLorentzian, "normal plane is not of signature (1,1)");
    auto lift = [&](int k) {
      const double q0 = eg.vec[k][0], q1 = eg.vec[k][1];
      const double a0 = i00 * q0 + i01 * q1, a1 = i11 * q1;
      return a0 * w1 + a1 * w2;
    };
    Vec4 s = lift(0), t = lift(1);
    f.n1 = sign_normalized(s / std::sqrt(inner(s, s)));
    t = t - inner(t, f.n1) * f.n1;
    f.n2 = t / std::sqrt(-inner(t, t));
  }
  if (det4(zu, zv, f.n1, f.n2) < 0.0) f.n2 = -f.n2;
  return f;
}

double frame_defect(const NormalFrame& f, const Vec4& zu, const Vec4& zv) {
  const Signature s = f.signature;
  double d = 0.0;
  d = std::max(d, std::abs(inner(f.n1, f.n1, s) - f.norm_sign(0)));
  d = std::max(d, std::abs(inner(f.n2, f.n2, s) - f.norm_sign(1)));
  d = std::max(d, std::abs(inner(f.n1, f.n2, s)));
  const double su = euclid_norm(zu), sv = euclid_norm(zv);
  d = std::max(d, std::abs(inner(f.n1, zu, s)) / su);
  d = std::max(d, std::abs(inner(f.n1, zv, s)) / sv);
  d = std::max(d, std::abs(inner(f.n2, zu, s)) / su);
  d = std::max(d, std::abs(inner(f.n2, zv, s)) / sv);
  return d;
}

NormalFrame transform_normal_frame(const NormalFrame& f, double param) {
  NormalFrame g = f;
  if (f.signature == Signature::Minkowski) {
    const double ch = std::cosh(param), sh = std::sinh(param);
    g.n1 = ch * f.n1 + sh * f.n2;
    g.n2 = sh * f.n1 + ch * f.n2;
  } else {
    const double cs = std::cos(param), sn = std::sin(param);
    g.n1 = cs * f.n1 + sn * f.n2;
    g.n2 = -sn * f.n1 + cs * f.n2;
  }
  return g;
}

double plane_mismatch(const Vec4& a1, const Vec4& a2, const Vec4& b1, const Vec4& b2) {
  const Vec4 q1 = a1 / euclid_norm(a1);
  Vec4 q2 = a2 - euclid_inner(a2, q1) * q1;
  q2 = q2 / euclid_norm(q2);
  double worst = 0.0;
  for (const Vec4* b : {&b1, &b2}) {
    const Vec4 u = *b / euclid_norm(*b);
    const Vec4 r = u - euclid_inner(u, q1) * q1 - euclid_inner(u, q2) * q2;
    worst = std::max(worst, euclid_norm(r));
  }
  return worst;
}

}  // namespace chenrot
