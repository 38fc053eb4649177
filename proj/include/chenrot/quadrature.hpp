#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

namespace chenrot {

namespace detail {

struct GaussLegendre16 {
  std::array<double, 16> x{}, w{};
  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

inline const GaussLegendre16& gl16() {
  static const GaussLegendre16 rule;
  return rule;
}

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                    int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Composite 16-point Gauss-Legendre on panels no wider than `panel`.
template <class F>
double integrate_gauss_legendre(F&& f, double a, double b, double panel = 0.25) {
  if (a == b) return 0.0;
  const auto& gl = detail::gl16();
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / panel)));
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += gl.w[i] * f(mid + 0.5 * h * gl.x[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

/// Adaptive Simpson with relative tolerance `rel_tol` (floored at 1e-300
/// absolute so a zero integral terminates).
template <class F>
double integrate_adaptive_simpson(F&& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(rel_tol * std::abs(whole), 1e-300);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

}  // namespace chenrot
