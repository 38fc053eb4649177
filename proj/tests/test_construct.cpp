#include "doctest.h"

#include <cmath>

#include "chenrot/construct.hpp"
#include "chenrot/error.hpp"
#include "chenrot/rotational.hpp"

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

TEST_CASE("chen quadratic roots") {
  const ChenQuadratic q = chen_quadratic(Ambient::Euclidean, RSpec::constant(1.0).eval(0.0));
  for (double w : q.roots) CHECK(std::abs(q.value(w)) <= 1e-12 * (1 + q.scale()));
  const auto roots = admissible_roots(q);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(1.0));
  CHECK(admissible_roots(chen_quadratic(Ambient::Hyperbolic, RSpec::constant(1.0).eval(0.0))).empty());
}

TEST_CASE("euclidean circle from r = 1") {
  const auto rep = construct_chen_profile(Ambient::Euclidean, RSpec::constant(1.0));
  REQUIRE(rep.pieces.size() == 1);
  for (double tp : rep.pieces[0].theta_prime) CHECK(std::abs(std::abs(tp) - 1.0) <= 1e-9);
  CHECK(rep.residual_condition < 1e-8);
  CHECK(rotational::chen_classify(rep.profile(), 64).verdict == rotational::ChenVerdict::NonTrivialChen);
}

TEST_CASE("hyperbolic chen profile with r = cosh 2u") {
  ConstructOptions opt;
  opt.domain = {-0.5, 0.5};
  const auto rep = construct_chen_profile(Ambient::Hyperbolic, RSpec::parse("cosh:2"), opt);
  REQUIRE_FALSE(rep.pieces.empty());
  CHECK(rep.residual_condition < 1e-5);
  CHECK(rep.max_abs_lambda < 1e-5);
  CHECK(rep.constant_K);
  CHECK(rep.K_mean == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(rotational::chen_classify(rep.profile(), 64).verdict == rotational::ChenVerdict::NonTrivialChen);
}

TEST_CASE("no admissible root for constant radius in the hyperbolic ambient") {
  CHECK(code_of([] { construct_chen_profile(Ambient::Hyperbolic, RSpec::constant(1.0)); }) ==
        ErrorCode::NoAdmissibleRoot);
}

TEST_CASE("constant k construction") {
  const auto rep = construct_constant_k_profile(Ambient::Hyperbolic, RSpec::constant(1.0), -1.0);
  CHECK(std::abs(rep.k_mean + 1.0) <= 1e-8);
  CHECK(rep.k_std <= 1e-8);
  for (double t = 0.0; t <= 2.0; t += 0.05) {
    const auto cf = rotational::closed_form_invariants(rep.profile(), t);
    CHECK(std::abs(cf.k + 1.0) <= 1e-8);
  }
  const auto e = construct_constant_k_profile(Ambient::Elliptic, RSpec::constant(2.0), -0.25);
  CHECK(e.k_mean == doctest::Approx(-0.25).epsilon(1e-8));
  CHECK(code_of([] { construct_constant_k_profile(Ambient::Hyperbolic, RSpec::constant(1.0), 0.5); }) ==
        ErrorCode::InvalidSpec);
}

TEST_CASE("minimal construction reproduces the catenary") {
  const auto rep = construct_minimal_profile(Ambient::Elliptic, 1.0, 0.0);
  REQUIRE(rep.pieces.size() == 1);
  CHECK_FALSE(rep.truncated_at);
  for (double u = 0.0; u <= 2.0; u += 0.01)
    CHECK(std::abs(rep.profile().jet(u).p[2] - std::sqrt(u * u + 1)) <= 1e-6);
  CHECK(rotational::chen_classify(rep.profile(), 64).verdict == rotational::ChenVerdict::MinimalTrivialChen);
}

TEST_CASE("hyperbolic minimal profile is truncated before blow-up") {
  const auto rep = construct_minimal_profile(Ambient::Hyperbolic, 1.0, 0.0);
  REQUIRE(rep.truncated_at);
  CHECK(*rep.truncated_at < 2.0);
  CHECK(rep.profile().domain().hi <= *rep.truncated_at + 1e-6);
}

TEST_CASE("construct targets parse") {
  CHECK(parse_construct_target("constant-k") == ConstructTarget::ConstantK);
  CHECK(std::string(to_string(ConstructTarget::Minimal)) == "minimal");
  CHECK(code_of([] { parse_construct_target("sphere"); }) == ErrorCode::InvalidSpec);
}
