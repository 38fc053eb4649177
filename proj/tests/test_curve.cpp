#include "doctest.h"

#include <cmath>

#include "chenrot/curve.hpp"
#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"
#include "chenrot/profile_io.hpp"
#include "chenrot/registry.hpp"
#include "chenrot/rspec.hpp"

using namespace chenrot;

namespace {
template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  FAIL("no GeometryError thrown");
  return ErrorCode::InvalidSpec;
}
}  // namespace

TEST_CASE("pseudocircle profile") {
  const ProfileCurve c = ProfileCurve::from_family(Ambient::Hyperbolic, {"mink-pseudocircle", {}});
  for (double u : {-1.5, 0.0, 0.8}) {
    const CurveJet j = c.jet(u);
    CHECK(inner3(j.d1, j.d1, Ambient::Hyperbolic) == doctest::Approx(1.0));
    CHECK(kappa1(j) == 0.0);
    const FrenetApparatus f = frenet(c, u);
    CHECK(f.kappa == doctest::Approx(1.0));
    CHECK(f.tau == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("helix torsion") {
  const ProfileCurve c = ProfileCurve::from_family(Ambient::Hyperbolic, {"helix", {{"a", 2}, {"b", 1}, {"r0", 3}}});
  const FrenetApparatus f = frenet(c, 0.2);
  CHECK(f.kappa == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(f.tau) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("every registry profile passes validation") {
  for (const RegistryProfile& p : registry_profiles()) {
    CAPTURE(p.name);
    const ValidationReport rep = validate(p.curve, 64);
    CHECK(rep.pass);
    CHECK(rep.max_unit_speed_residual < 1e-6);
  }
}

TEST_CASE("tabulated samples reproduce the analytic jet") {
  const ProfileCurve a = ProfileCurve::from_family(Ambient::Elliptic, {"catenary", {}});
  const ProfileCurve t = ProfileCurve::from_samples(Ambient::Elliptic, sample_profile(a, 401));
  for (double u : {-1.7, -0.33, 0.0, 1.21}) {
    const CurveJet ja = a.jet(u), jt = t.jet(u);
    for (int i = 0; i < 3; ++i) {
      CHECK(jt.p[i] == doctest::Approx(ja.p[i]).epsilon(1e-10));
      CHECK(jt.d2[i] == doctest::Approx(ja.d2[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("non-unit-speed samples are resampled by arc length") {
  TabulatedSamples s;
  for (int i = 0; i <= 200; ++i) {
    const double t = -1.0 + 0.01 * i;  // circle of radius 1 traversed at speed 2
    s.u.push_back(t);
    s.x1.push_back(std::cos(2 * t));
    s.x2.push_back(std::sin(2 * t));
    s.r.push_back(3.0);
  }
  const ProfileCurve c = ProfileCurve::from_samples(Ambient::Euclidean, s);
  CHECK(c.domain().length() == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(validate(c, 50).max_unit_speed_residual < 1e-6);
}

TEST_CASE("curve errors") {
  const ProfileCurve c = ProfileCurve::from_family(Ambient::Elliptic, {"catenary", {}});
  CHECK(code_of([&] { c.jet(5.0); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { ProfileCurve::from_family(Ambient::Hyperbolic, {"catenary", {}}); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([] { ProfileCurve::from_family(Ambient::Euclidean, {"no-such", {}}); }) == ErrorCode::InvalidSpec);
  TabulatedSamples few{{0, 1, 2}, {0, 1, 2}, {0, 0, 0}, {1, 1, 1}};
  CHECK(code_of([&] { ProfileCurve::from_samples(Ambient::Euclidean, few); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("straight profile has no Frenet frame") {
  TabulatedSamples s;
  for (int i = 0; i < 20; ++i) {
    s.u.push_back(0.1 * i);
    s.x1.push_back(0.1 * i);
    s.x2.push_back(0.0);
    s.r.push_back(1.0);
  }
  const ProfileCurve c = ProfileCurve::from_samples(Ambient::Euclidean, s);
  CHECK(code_of([&] { frenet(c, 1.0); }) == ErrorCode::InflectionPoint);
}

TEST_CASE("radius spec grammar") {
  CHECK(RSpec::parse("const:1.5").eval(0.3).r == 1.5);
  const RJet j = RSpec::parse("cosh:2").eval(0.5);
  CHECK(j.r == doctest::Approx(std::cosh(1.0)));
  CHECK(j.d2 == doctest::Approx(4 * std::cosh(1.0)));
  const RJet p = RSpec::parse("poly:1,0,3").eval(2.0);
  CHECK(p.r == 13.0);
  CHECK(p.d1 == 12.0);
  CHECK(p.d2 == 6.0);
  CHECK(RSpec::parse("sqrtquad").eval(0.0).d2 == doctest::Approx(1.0));
  CHECK(code_of([] { RSpec::parse("wobble:3"); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("profile spec round trip") {
  const ProfileCurve a = ProfileCurve::from_family(Ambient::Hyperbolic, {"helix", {{"a", 2}, {"b", 1}, {"r0", 3}}});
  const std::string family_text = write_profile_spec(a);
  const ProfileCurve b = parse_profile_spec(family_text);
  CHECK(b.ambient() == Ambient::Hyperbolic);
  CHECK(b.jet(0.4).p[2] == doctest::Approx(a.jet(0.4).p[2]));

  const ProfileCurve t = ProfileCurve::from_samples(Ambient::Hyperbolic, sample_profile(a, 101));
  const std::string text = write_profile_spec(t);
  CHECK(write_profile_spec(parse_profile_spec(text)) == text);
  CHECK(code_of([] { parse_profile_spec("{\"ambient\": \"elliptic\"}"); }) == ErrorCode::InvalidSpec);
  CHECK(code_of([] { parse_profile_spec("not json"); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
