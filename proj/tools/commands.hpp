#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chenrot::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kGeometryError = 3, kEmptyAdmissible = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProfileArgs {
  std::string ambient;
  std::string profile_path;
  std::string family;
  std::map<std::string, double> params;
};

struct AnalyzeArgs {
  ProfileArgs profile;
  std::string grid = "32x32";
  std::string u_range, v_range;
  double tol = 1e-9;
  std::string out = ".";
};

struct ClassifyArgs {
  ProfileArgs profile;
  int grid = 64;
  std::optional<double> tol;
  std::string u_range;
  std::string out;
};

struct ConstructArgs {
  std::string target;
  std::string ambient;
  std::string r;
  std::optional<double> k0;
  std::optional<double> r0, r0p;
  std::string domain = "0,2";
  double step = 1e-3;
  int branch = 1;
  double theta0 = 0.0, x1_0 = 0.0, x2_0 = 0.0;
  std::string out = ".";
};

struct ExportArgs {
  ProfileArgs profile;
  std::string grid = "32x32";
  std::string u_range, v_range;
  std::string projection;
  std::string out = ".";
};

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string fault;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a);
int cmd_classify(const ClassifyArgs& a);
int cmd_construct(const ConstructArgs& a);
int cmd_export(const ExportArgs& a);
int cmd_verify(const VerifyArgs& a);

/// Runs a command, mapping failures to exit codes with a message on stderr.
int guarded(const std::function<int()>& f);

}  // namespace chenrot::cli
