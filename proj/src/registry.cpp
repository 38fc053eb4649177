#include "chenrot/registry.hpp"

namespace chenrot {

TabulatedSamples sample_profile(const ProfileCurve& c, std::size_t n) {
  TabulatedSamples s;
  const Interval d = c.domain();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = d.lo + d.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    const CurveJet j = c.jet(u);
    s.u.push_back(u);
    s.x1.push_back(j.p[0]);
    s.x2.push_back(j.p[1]);
    s.r.push_back(j.p[2]);
  }
  return s;
}

std::vector<RegistryProfile> registry_profiles() {
  struct Entry {
    Ambient amb;
    FamilySpec spec;
  };
  const Entry entries[] = {
      {Ambient::Hyperbolic, {"mink-pseudocircle", {}}},
      {Ambient::Hyperbolic, {"constant-r-theta", {{"R", 1.5}, {"omega", 1.0}}}},
      {Ambient::Hyperbolic, {"euclid-circle", {{"R", 2.0}, {"a", 0.8}}}},
      {Ambient::Hyperbolic, {"helix", {{"a", 2.0}, {"b", 1.0}, {"r0", 3.0}}}},
      {Ambient::Hyperbolic, {"helix", {{"a", 1.5}, {"b", -0.5}, {"r0", 2.0}}}},
      {Ambient::Hyperbolic, {"polynomial-r", {{"c0", 2.0}, {"c1", 0.3}, {"c2", 0.2}}}},
      {Ambient::Elliptic, {"catenary", {}}},
      {Ambient::Elliptic, {"constant-r-theta", {{"R", 2.0}, {"omega", 1.0}}}},
      {Ambient::Elliptic, {"constant-r-theta", {{"R", 1.5}, {"omega", 0.7}}}},
      {Ambient::Elliptic, {"helix", {{"a", 2.0}, {"b", 0.5}, {"r0", 3.0}}}},
      {Ambient::Elliptic, {"polynomial-r", {{"c0", 2.0}, {"c1", 0.3}, {"c2", 0.2}}}},
      {Ambient::Euclidean, {"euclid-circle", {{"R", 1.0}, {"a", 1.0}}}},
      {Ambient::Euclidean, {"constant-r-theta", {{"R", 2.0}, {"omega", 1.0}}}},
      {Ambient::Euclidean, {"catenary", {}}},
      {Ambient::Euclidean, {"helix", {{"a", 2.0}, {"b", 0.5}, {"r0", 3.0}}}},
      {Ambient::Euclidean, {"polynomial-r", {{"c0", 2.0}, {"c1", 0.3}, {"c2", 0.2}}}},
  };
  std::vector<RegistryProfile> out;
  for (const Entry& e : entries) {
    ProfileCurve c = ProfileCurve::from_family(e.amb, e.spec);
    out.push_back({c.describe(), c, true});
  }
  // Tabulated copies of one curved and one planar profile per ambient.
  const Entry tabulated[] = {
      {Ambient::Hyperbolic, {"helix", {{"a", 2.0}, {"b", 1.0}, {"r0", 3.0}}}},
      {Ambient::Hyperbolic, {"polynomial-r", {{"c0", 2.0}, {"c1", 0.3}, {"c2", 0.2}}}},
      {Ambient::Elliptic, {"helix", {{"a", 2.0}, {"b", 0.5}, {"r0", 3.0}}}},
      {Ambient::Elliptic, {"catenary", {}}},
      {Ambient::Euclidean, {"helix", {{"a", 2.0}, {"b", 0.5}, {"r0", 3.0}}}},
  };
  for (const Entry& e : tabulated) {
    const ProfileCurve a = ProfileCurve::from_family(e.amb, e.spec);
    ProfileCurve t = ProfileCurve::from_samples(e.amb, sample_profile(a, 401));
    out.push_back({a.describe() + " (tabulated)", t, false});
  }
  return out;
}

}  // namespace chenrot
