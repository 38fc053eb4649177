#pragma once

// Unit-speed profile curves (x1, x2, r) in the three-dimensional subspace
// that a rotational surface is generated from, and their Frenet apparatus.
//
// Coordinates are always stored in the order (x1, x2, r). The 3-metric
// depends on the ambient tag:
//   Hyperbolic: x1'^2 + x2'^2 - r'^2
//   Elliptic:   r'^2 + x1'^2 - x2'^2
//   Euclidean:  x1'^2 + x2'^2 + r'^2

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chenrot/mink.hpp"

namespace chenrot {

enum class Ambient { Hyperbolic, Elliptic, Euclidean };

const char* to_string(Ambient a);
Ambient parse_ambient(const std::string& s);

/// Diagonal of the profile 3-metric in (x1, x2, r) order.
Vec3 metric_signs(Ambient a);
double inner3(const Vec3& a, const Vec3& b, Ambient amb);

/// Signature of the 4-space the rotational surface lives in.
inline Signature surface_signature(Ambient a) {
  return a == Ambient::Euclidean ? Signature::Euclidean : Signature::Minkowski;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double u, double slack = 0.0) const { return u >= lo - slack && u <= hi + slack; }
  double length() const { return hi - lo; }
};

struct CurveJet {
  double u = 0.0;
  Vec3 p, d1, d2, d3;
};

struct FamilySpec {
  std::string name;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct TabulatedSamples {
  std::vector<double> u, x1, x2, r;
  std::size_t size() const { return u.size(); }
};

/// Jet provider behind a ProfileCurve.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  virtual CurveJet jet(double u) const = 0;
};

/// Number of nodes in the local interpolation window for tabulated sources.
inline constexpr std::size_t kTabulatedStencil = 8;
/// Target node spacing inside that window; denser samples are strided.
inline constexpr double kTabulatedSpacing = 5e-3;

class ProfileCurve {
 public:
  /// Analytic family from the registry. Unknown names, wrong ambient, or bad
  /// parameters raise InvalidSpec.
  static ProfileCurve from_family(Ambient ambient, const FamilySpec& spec,
                                  std::optional<Interval> domain = std::nullopt);

  enum class Reparametrize { Auto, Always, Never };

  /// Tabulated samples with strictly increasing u. With Reparametrize::Auto the
  /// samples are resampled by arc length when their unit-speed residual
  /// exceeds 1e-6.
  static ProfileCurve from_samples(Ambient ambient, TabulatedSamples samples,
                                   std::optional<Interval> domain = std::nullopt,
                                   Reparametrize mode = Reparametrize::Auto);

  Ambient ambient() const { return ambient_; }
  const Interval& domain() const { return domain_; }

  /// Position and derivatives through order 3. Throws OutOfDomain.
  CurveJet jet(double u) const;

  bool is_tabulated() const { return std::holds_alternative<TabulatedSamples>(origin_); }
  const std::variant<FamilySpec, TabulatedSamples>& origin() const { return origin_; }
  std::string describe() const;

  /// The same geometric curve with parameter shifted: result(u) = this(u + delta).
  ProfileCurve shifted(double delta) const;
  /// Restriction to a sub-interval of the domain.
  ProfileCurve restricted(Interval sub) const;

 private:
  ProfileCurve() = default;

  Ambient ambient_ = Ambient::Hyperbolic;
  Interval domain_;
  double shift_ = 0.0;
  std::shared_ptr<const CurveSource> source_;
  std::variant<FamilySpec, TabulatedSamples> origin_;
};

struct FrenetApparatus {
  Vec3 t, n, b;
  double kappa = 0.0;
  double tau = 0.0;
  int epsilon = 1;
};

inline constexpr double kAccelerationTol = 1e-10;

/// Frenet frame, curvature, torsion and causal sign of the principal normal.
/// Throws InflectionPoint when |<t',t'>| <= tol.
FrenetApparatus frenet(const ProfileCurve& c, double u, double tol = kAccelerationTol);
FrenetApparatus frenet(const CurveJet& j, Ambient amb, double tol = kAccelerationTol);

/// Curvature of the projection into the (x1, x2) axis plane:
/// x1' x2'' - x2' x1''.
double kappa1(const ProfileCurve& c, double u);
inline double kappa1(const CurveJet& j) { return j.d1[0] * j.d2[1] - j.d1[1] * j.d2[0]; }

struct ValidationReport {
  bool pass = true;
  double max_unit_speed_residual = 0.0;
  double min_r = 0.0;
  double min_abs_accel = 0.0;
  bool accel_sign_change = false;
  std::vector<std::string> failures;
};

ValidationReport validate(const ProfileCurve& c, std::size_t samples, double accel_tol = kAccelerationTol);

/// Arc-length resampling of tabulated samples (composite adaptive Simpson,
/// relative tolerance 1e-10). The result keeps the first parameter value and
/// the sample count, with uniform spacing in arc length.
TabulatedSamples reparametrize_by_arc_length(Ambient ambient, const TabulatedSamples& samples);

/// Registered analytic family names.
std::vector<std::string> family_names();

}  // namespace chenrot
