#pragma once

// Reference profiles used by the verification suites: every analytic family
// in a few parameter settings per ambient, plus tabulated copies.

#include <string>
#include <vector>

#include "chenrot/curve.hpp"

namespace chenrot {

struct RegistryProfile {
  std::string name;
  ProfileCurve curve;
  bool analytic = true;
};

std::vector<RegistryProfile> registry_profiles();

/// Samples an analytic profile on n uniform parameter values of its domain.
TabulatedSamples sample_profile(const ProfileCurve& c, std::size_t n);

}  // namespace chenrot
