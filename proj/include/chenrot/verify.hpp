#pragma once

// Cross-validation suites over the registry profiles. Each row compares a
// quantity against an independent computation and reports the largest
// deviation found.

#include <string>
#include <vector>

#include "chenrot/surface.hpp"

namespace chenrot {

struct VerifyRow {
  std::string suite;
  std::string check;
  std::string subject;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct VerifyOptions {
  std::vector<std::string> suites;  // empty: all suites
  FaultInjection fault;
};

/// pipeline, flatness, allied, minimal, derivative, gauss, second-form, chen
const std::vector<std::string>& verify_suite_names();

/// Unknown suite names raise InvalidSpec.
std::vector<VerifyRow> run_verify(const VerifyOptions& opt = {});

}  // namespace chenrot
