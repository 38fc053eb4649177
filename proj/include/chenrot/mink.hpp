#pragma once

// Indefinite-metric linear algebra on 4-vectors (signature +,+,+,-) and the
// Euclidean comparison ambient, plus oriented normal-frame construction.

#include <array>
#include <cmath>
#include <cstddef>

namespace chenrot {

template <std::size_t N>
struct Vec {
  std::array<double, N> c{};

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator/(Vec a, double s) { return a *= (1.0 / s); }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

inline constexpr Vec4 basis4(std::size_t i) {
  Vec4 v;
  v[i] = 1.0;
  return v;
}

/// Ambient metric of the 4-space. Minkowski is dx1^2+dx2^2+dx3^2-dx4^2.
enum class Signature { Minkowski, Euclidean };

enum class CausalClass { Spacelike, Timelike, Lightlike };

const char* to_string(CausalClass c);

inline constexpr double inner(const Vec4& u, const Vec4& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3];
}

inline constexpr double euclid_inner(const Vec4& u, const Vec4& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

inline constexpr double inner(const Vec4& u, const Vec4& v, Signature s) {
  return s == Signature::Minkowski ? inner(u, v) : euclid_inner(u, v);
}

template <std::size_t N>
double euclid_norm(const Vec<N>& v) {
  double s = 0.0;
  for (double x : v.c) s += x * x;
  return std::sqrt(s);
}

template <std::size_t N>
double l1_norm(const Vec<N>& v) {
  double s = 0.0;
  for (double x : v.c) s += std::abs(x);
  return s;
}

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
  for (double x : v.c)
    if (!std::isfinite(x)) return false;
  return true;
}

/// Scale-aware default: 1e-9 * (1 + |v|_1).
double default_causal_tol(const Vec4& v);

CausalClass causal_character(const Vec4& v, double tol);
inline CausalClass causal_character(const Vec4& v) {
  return causal_character(v, default_causal_tol(v));
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

struct NormalFrame {
  Vec4 n1;
  Vec4 n2;
  // <n1,n1> = epsilon and <n2,n2> = -epsilon in the Minkowski ambient; both
  // +1 in the Euclidean ambient (epsilon = +1 there).
  int epsilon = 1;
  Signature signature = Signature::Minkowski;

  /// <n_k, n_k> for k = 0, 1.
  double norm_sign(int k) const {
    if (signature == Signature::Euclidean) return 1.0;
    return k == 0 ? epsilon : -epsilon;
  }
  const Vec4& operator[](int k) const { return k == 0 ? n1 : n2; }
};

/// Completes the spacelike tangent plane span{zu, zv} with an orthonormal
/// normal pair. Minkowski output has n1 spacelike, n2 timelike; the frame is
/// positively oriented (det(zu, zv, n1, n2) > 0).
///
/// Throws DegenerateTangentPlane if the tangent Gram determinant vanishes and
/// NormalSpaceNotLorentzian if the normal plane is not of signature (1,1).
NormalFrame orthonormal_normal_frame(const Vec4& zu, const Vec4& zv,
                                     Signature sig = Signature::Minkowski);

/// Largest Gram-condition violation of a frame against the given tangents.
double frame_defect(const NormalFrame& f, const Vec4& zu, const Vec4& zv);

/// Boost (Minkowski) or rotation (Euclidean) of the normal pair by `param`.
NormalFrame transform_normal_frame(const NormalFrame& f, double param);

/// Residual measuring whether span{a1,a2} equals span{b1,b2}: the largest
/// Euclidean distance of a unit-normalized b_i from the plane span{a1,a2}.
double plane_mismatch(const Vec4& a1, const Vec4& a2, const Vec4& b1, const Vec4& b2);

}  // namespace chenrot
