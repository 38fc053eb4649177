#include "doctest.h"

#include "chenrot/error.hpp"
#include "chenrot/mink.hpp"

using namespace chenrot;

namespace {
Vec4 v4(double a, double b, double c, double d) { return Vec4{{a, b, c, d}}; }
}

TEST_CASE("minkowski inner product and causal character") {
  CHECK(inner(v4(1, 0, 0, 0), v4(1, 0, 0, 0)) == 1.0);
  CHECK(inner(v4(0, 0, 0, 1), v4(0, 0, 0, 1)) == -1.0);
  CHECK(inner(v4(1, 2, 3, 4), v4(1, 2, 3, 4), Signature::Euclidean) == 30.0);
  CHECK(causal_character(v4(1, 0, 0, 0)) == CausalClass::Spacelike);
  CHECK(causal_character(v4(0, 0, 0, 2)) == CausalClass::Timelike);
  CHECK(causal_character(v4(1, 0, 0, 1)) == CausalClass::Lightlike);
}

TEST_CASE("det4 of the standard basis") {
  CHECK(det4(basis4(0), basis4(1), basis4(2), basis4(3)) == doctest::Approx(1.0));
  CHECK(det4(basis4(1), basis4(0), basis4(2), basis4(3)) == doctest::Approx(-1.0));
}

TEST_CASE("normal frame of a spacelike plane") {
  const Vec4 zu = v4(1, 0, 0.3, 0.2), zv = v4(0, 1, 0.1, -0.4);
  const NormalFrame f = orthonormal_normal_frame(zu, zv);
  CHECK(frame_defect(f, zu, zv) < 1e-12);
  CHECK(inner(f.n1, f.n1) == doctest::Approx(1.0));
  CHECK(inner(f.n2, f.n2) == doctest::Approx(-1.0));
  CHECK(det4(zu, zv, f.n1, f.n2) > 0.0);

  SUBCASE("boost keeps the frame orthonormal") {
    const NormalFrame g = transform_normal_frame(f, 0.7);
    CHECK(frame_defect(g, zu, zv) < 1e-12);
    CHECK(plane_mismatch(f.n1, f.n2, g.n1, g.n2) < 1e-12);
  }
}

TEST_CASE("euclidean normal frame") {
  const Vec4 zu = v4(1, 0, 0, 0.5), zv = v4(0, 2, 1, 0);
  const NormalFrame f = orthonormal_normal_frame(zu, zv, Signature::Euclidean);
  CHECK(frame_defect(f, zu, zv) < 1e-12);
  CHECK(f.norm_sign(0) == 1.0);
  CHECK(f.norm_sign(1) == 1.0);
}

TEST_CASE("degenerate tangent planes are rejected") {
  const Vec4 zu = v4(1, 0, 0, 0);
  try {
    orthonormal_normal_frame(zu, 2.0 * zu);
    FAIL("expected DegenerateTangentPlane");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::DegenerateTangentPlane);
  }
  // A plane containing a timelike direction has a spacelike normal plane.
  try {
    orthonormal_normal_frame(v4(1, 0, 0, 0), v4(0, 0, 0, 1));
    FAIL("expected NormalSpaceNotLorentzian");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NormalSpaceNotLorentzian);
  }
}
