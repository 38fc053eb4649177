#pragma once

// Profile-spec documents:
//   { "ambient": "hyperbolic" | "elliptic" | "euclidean",
//     "source": {"family": name, "params": {...}}
//             | {"samples": {"u": [...], "x1": [...], "x2": [...], "r": [...]}},
//     "domain": [u_min, u_max] }          (domain optional)

#include <string>

#include "chenrot/curve.hpp"

namespace chenrot {

/// Parses a profile-spec document. Malformed input raises InvalidSpec.
ProfileCurve parse_profile_spec(const std::string& text);
ProfileCurve load_profile_spec(const std::string& path);

/// Serializes a profile back to a profile-spec document (two-space indent,
/// sorted keys, shortest round-trip numbers).
std::string write_profile_spec(const ProfileCurve& c);

}  // namespace chenrot
