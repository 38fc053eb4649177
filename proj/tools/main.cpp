#include <iostream>

#include "CLI11.hpp"
#include "chenrot/curve.hpp"
#include "chenrot/verify.hpp"
#include "commands.hpp"

using namespace chenrot::cli;

namespace {

struct ProfileFlags {
  std::optional<double> R, omega, a, b, r0;
  std::vector<std::string> extra;
};

void add_profile_flags(CLI::App* cmd, ProfileArgs& p, ProfileFlags& f) {
  cmd->add_option("--ambient", p.ambient, "hyperbolic | elliptic | euclidean");
  cmd->add_option("--profile", p.profile_path, "profile spec JSON file");
  cmd->add_option("--family", p.family, "analytic family name");
  cmd->add_option("--R", f.R, "family parameter R");
  cmd->add_option("--omega", f.omega, "family parameter omega");
  cmd->add_option("--a", f.a, "family parameter a");
  cmd->add_option("--b", f.b, "family parameter b");
  cmd->add_option("--r0", f.r0, "family parameter r0");
  cmd->add_option("--param", f.extra, "extra family parameter key=value (repeatable)");
}

void collect_params(ProfileArgs& p, const ProfileFlags& f) {
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) p.params[k] = *v;
  };
  put("R", f.R);
  put("omega", f.omega);
  put("a", f.a);
  put("b", f.b);
  put("r0", f.r0);
  for (const std::string& kv : f.extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + kv + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      p.params[kv.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw ConfigError("--param value is not a number: '" + kv + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, Chen classification and construction of rotational surfaces in R^4_1"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  AnalyzeArgs an;
  ProfileFlags an_f;
  auto* analyze = app.add_subcommand("analyze", "tabulate invariants over a grid");
  add_profile_flags(analyze, an.profile, an_f);
  analyze->add_option("--grid", an.grid, "NUxNV")->capture_default_str();
  analyze->add_option("--u-range", an.u_range, "a,b");
  analyze->add_option("--v-range", an.v_range, "a,b");
  analyze->add_option("--tol", an.tol, "point classification tolerance")->capture_default_str();
  analyze->add_option("--out", an.out, "output directory")->capture_default_str();

  ClassifyArgs cl;
  ProfileFlags cl_f;
  auto* classify = app.add_subcommand("classify", "Chen classification of a profile");
  add_profile_flags(classify, cl.profile, cl_f);
  classify->add_option("--grid", cl.grid, "number of profile samples")->capture_default_str();
  classify->add_option("--tol", cl.tol, "classification tolerance");
  classify->add_option("--u-range", cl.u_range, "a,b");
  classify->add_option("--out", cl.out, "also write classification.json here");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "build a profile for a prescribed radius function");
  construct->add_option("--target", co.target, "chen | constant-k | minimal")->required();
  construct->add_option("--ambient", co.ambient, "hyperbolic | elliptic | euclidean")->required();
  construct->add_option("--r", co.r, "const:c | cosh:a | poly:c0,c1,... | sqrtquad:a,b,c");
  construct->add_option("--k0", co.k0, "target normal curvature (constant-k)");
  construct->add_option("--r0", co.r0, "initial radius (minimal)");
  construct->add_option("--r0p", co.r0p, "initial radius slope (minimal)");
  construct->add_option("--domain", co.domain, "a,b")->capture_default_str();
  construct->add_option("--step", co.step, "integration step")->capture_default_str();
  construct->add_option("--branch", co.branch, "+1 or -1")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  construct->add_option("--theta0", co.theta0)->capture_default_str();
  construct->add_option("--x1-0", co.x1_0)->capture_default_str();
  construct->add_option("--x2-0", co.x2_0)->capture_default_str();
  construct->add_option("--out", co.out, "output directory")->capture_default_str();

  ExportArgs ex;
  ProfileFlags ex_f;
  auto* exp = app.add_subcommand("export", "write an OBJ mesh of the surface");
  add_profile_flags(exp, ex.profile, ex_f);
  exp->add_option("--grid", ex.grid, "NUxNV")->capture_default_str();
  exp->add_option("--u-range", ex.u_range, "a,b");
  exp->add_option("--v-range", ex.v_range, "a,b");
  exp->add_option("--projection", ex.projection, "drop:1..4 | stereo[:pole]");
  exp->add_option("--out", ex.out, "output directory")->capture_default_str();

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "run the cross-validation suites");
  verify->add_option("--suite", ve.suites, "suite name(s), repeatable or comma separated");
  verify->add_option("--inject-fault", ve.fault, "test hook: flip-L-sign");
  verify->add_option("--out", ve.out, "also write verify.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  return guarded([&] {
    if (analyze->parsed()) {
      collect_params(an.profile, an_f);
      return cmd_analyze(an);
    }
    if (classify->parsed()) {
      collect_params(cl.profile, cl_f);
      return cmd_classify(cl);
    }
    if (construct->parsed()) return cmd_construct(co);
    if (exp->parsed()) {
      collect_params(ex.profile, ex_f);
      return cmd_export(ex);
    }
    return cmd_verify(ve);
  });
}
