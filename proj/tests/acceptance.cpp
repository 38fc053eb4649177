// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chenrot/construct.hpp"
#include "chenrot/registry.hpp"
#include "chenrot/rotational.hpp"
#include "chenrot/surface.hpp"

using namespace chenrot;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

std::vector<double> u_grid(const ProfileCurve& c, std::size_t n, double margin = 0.0) {
  const Interval d = c.domain();
  return grid(d.lo + margin * d.length(), d.hi - margin * d.length(), n);
}

std::vector<double> v_grid(Ambient a, std::size_t n) {
  const Interval r = rotational::default_v_range(a);
  return grid(r.lo, r.hi, n);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ProfileCurve family(Ambient a, const std::string& name, std::map<std::string, double> p = {}) {
  return ProfileCurve::from_family(a, {name, std::move(p)});
}

Outcome flat_normal_connection() {
  int hyp = 0, ell = 0;
  double worst = 0.0;
  for (const RegistryProfile& p : registry_profiles()) {
    const Ambient a = p.curve.ambient();
    if (a == Ambient::Euclidean) continue;
    (a == Ambient::Hyperbolic ? hyp : ell)++;
    const SurfacePatch patch = rotational::build(p.curve);
    for (double u : u_grid(p.curve, 32))
      for (double v : v_grid(a, 32)) worst = std::max(worst, std::abs(evaluate_invariants(patch, u, v).varkappa));
  }
  return {hyp >= 5 && ell >= 5 && worst <= 1e-8,
          std::to_string(hyp) + " hyperbolic + " + std::to_string(ell) + " elliptic profiles, 32x32, max |varkappa| = " +
              sci(worst) + " (<= 1e-8)"};
}

Outcome closed_form_agreement() {
  double wk = 0.0, wK = 0.0;
  int n = 0;
  for (const RegistryProfile& p : registry_profiles()) {
    if (!p.analytic) continue;
    ++n;
    const SurfacePatch patch = rotational::build(p.curve);
    for (double u : u_grid(p.curve, 32)) {
      const CurveJet j = p.curve.jet(u);
      const double r = j.p[2], r2 = j.d2[2], k1 = kappa1(j);
      for (double v : v_grid(p.curve.ambient(), 8)) {
        const InvariantSet s = evaluate_invariants(patch, u, v);
        wk = std::max(wk, std::abs(s.k + k1 * k1 / (r * r)) / (1 + std::abs(s.k)));
        wK = std::max(wK, std::abs(s.K + r2 / r) / (1 + std::abs(s.K)));
      }
    }
  }
  return {wk <= 1e-7 && wK <= 1e-7, std::to_string(n) + " analytic profiles, max rel |k + kappa1^2/r^2| = " + sci(wk) +
                                        ", max rel |K + r''/r| = " + sci(wK) + " (<= 1e-7)"};
}

Outcome gauss_oracle() {
  double worst = 0.0;
  int n = 0;
  for (const RegistryProfile& p : registry_profiles()) {
    ++n;
    const SurfacePatch patch = rotational::build(p.curve);
    for (double u : u_grid(p.curve, 16, 0.02)) {
      const CurveJet j = p.curve.jet(u);
      for (double v : v_grid(p.curve.ambient(), 6))
        worst = std::max(worst, std::abs(gauss_curvature(patch, u, v) + j.d2[2] / j.p[2]));
    }
  }
  return {worst <= 1e-5,
          std::to_string(n) + " profiles, max |K_intrinsic + r''/r| = " + sci(worst) + " (<= 1e-5)"};
}

Outcome allied_identity() {
  double mink = 0.0, eucl = 0.0;
  std::size_t points = 0, undefined = 0;
  for (const RegistryProfile& p : registry_profiles()) {
    const SurfacePatch patch = rotational::build(p.curve);
    const bool is_mink = p.curve.ambient() != Ambient::Euclidean;
    for (double u : u_grid(p.curve, 24))
      for (double v : v_grid(p.curve.ambient(), 8)) {
        const InvariantSet s = evaluate_invariants(patch, u, v);
        if (s.H_kind == MeanCurvatureKind::Zero || s.H_kind == MeanCurvatureKind::Lightlike) continue;
        ++points;
        if (!s.tangents || !s.lambda || !s.l) {
          ++undefined;
          continue;
        }
        const TangentFrames& t = *s.tangents;
        const Vec4 sxx = sigma(s.jet, s.I, s.c, s.frame, t.x, t.x), syy = sigma(s.jet, s.I, s.c, s.frame, t.y, t.y);
        const Vec4 by_trace = allied_by_trace(sxx, *s.sigma_xy, syy, s.H, s.frame);
        const Vec4 formula = allied_mean_curvature(s.k, s.varkappa, *s.lambda, *s.l);
        const double d = euclid_norm(by_trace - formula);
        (is_mink ? mink : eucl) = std::max(is_mink ? mink : eucl, d);
      }
  }
  return {points > 0 && undefined == 0 && mink <= 1e-8 && eucl <= 1e-7,
          std::to_string(points) + " non-null points (" + std::to_string(undefined) + " without lambda), max |a(H) - formula| = " + sci(mink) +
              " (<= 1e-8), Euclidean trace recomputation " + sci(eucl) + " (<= 1e-7)"};
}

Outcome proposition_coverage() {
  using rotational::ChenVerdict;
  std::ostringstream d;
  bool ok = true;

  const ProfileCurve pc = family(Ambient::Hyperbolic, "mink-pseudocircle");
  const auto v1 = rotational::chen_classify(pc, 64).verdict;
  const auto w = rotational::hyperplane_witness(pc, 64);
  ok &= v1 == ChenVerdict::HyperplanarTrivialChen && w.max_distance <= 1e-8;
  d << "pseudocircle " << rotational::to_string(v1) << " dev " << sci(w.max_distance);

  const ProfileCurve cat = family(Ambient::Elliptic, "catenary");
  const auto v2 = rotational::chen_classify(cat, 64).verdict;
  double hmax = 0.0;
  const SurfacePatch cp = rotational::build(cat);
  for (double u : u_grid(cat, 32))
    for (double v : v_grid(Ambient::Elliptic, 16)) hmax = std::max(hmax, euclid_norm(evaluate_invariants(cp, u, v).H));
  ok &= v2 == ChenVerdict::MinimalTrivialChen && hmax <= 1e-7;
  d << "; catenary " << rotational::to_string(v2) << " |H| " << sci(hmax);

  const ProfileCurve circ = family(Ambient::Euclidean, "euclid-circle");
  const auto v3 = rotational::chen_classify(circ, 64).verdict;
  double lmax = 0.0;
  bool have_lambda = true;
  const SurfacePatch ep = rotational::build(circ);
  for (double u : u_grid(circ, 32))
    for (double v : v_grid(Ambient::Euclidean, 16)) {
      const InvariantSet s = evaluate_invariants(ep, u, v);
      have_lambda &= s.lambda.has_value();
      if (s.lambda) lmax = std::max(lmax, std::abs(*s.lambda));
    }
  ok &= v3 == ChenVerdict::NonTrivialChen && have_lambda && lmax <= 1e-8;
  d << "; circle " << rotational::to_string(v3) << " |lambda| " << sci(lmax);

  const ProfileCurve r2 = family(Ambient::Elliptic, "constant-r-theta", {{"R", 2.0}});
  const auto v4 = rotational::chen_classify(r2, 64).verdict;
  const double target = 5.0 / (4.0 * std::sqrt(3.0));
  double ldev = 0.0;
  const SurfacePatch rp = rotational::build(r2);
  for (double u : u_grid(r2, 16))
    for (double v : v_grid(Ambient::Elliptic, 8)) {
      const InvariantSet s = evaluate_invariants(rp, u, v);
      ldev = std::max(ldev, s.lambda ? std::abs(*s.lambda - target) : INFINITY);
    }
  ok &= v4 == ChenVerdict::NotChen && ldev <= 1e-6;
  d << "; r=2 " << rotational::to_string(v4) << " |lambda - 5/(4 sqrt 3)| " << sci(ldev);
  return {ok, d.str()};
}

Outcome constructor_soundness() {
  std::ostringstream d;
  bool ok = true;

  const auto ck = construct_constant_k_profile(Ambient::Hyperbolic, RSpec::constant(1.0), -1.0);
  double kmax = 0.0;
  for (double u : u_grid(ck.profile(), 401)) kmax = std::max(kmax, std::abs(rotational::closed_form_invariants(ck.profile(), u).k + 1.0));
  const SurfacePatch cp = rotational::build(ck.profile());
  for (double u : u_grid(ck.profile(), 64, 0.0))
    kmax = std::max(kmax, std::abs(evaluate_invariants(cp, u, 0.3).k + 1.0));
  ok &= kmax <= 1e-8 && ck.k_std <= 1e-8;
  d << "constant-k max |k+1| " << sci(kmax) << " std " << sci(ck.k_std);

  const auto mn = construct_minimal_profile(Ambient::Elliptic, 1.0, 0.0);
  double rdev = 0.0;
  const bool full = !mn.truncated_at && mn.profile().domain().lo <= 0.0 && mn.profile().domain().hi >= 2.0;
  for (double u : grid(0.0, 2.0, 401)) rdev = std::max(rdev, std::abs(mn.profile().jet(u).p[2] - std::sqrt(u * u + 1)));
  ok &= full && rdev <= 1e-6;
  d << "; minimal |r - sqrt(u^2+1)| " << sci(rdev);

  const auto ch = construct_chen_profile(Ambient::Euclidean, RSpec::constant(1.0));
  double tdev = ch.pieces.size() == 1 ? 0.0 : INFINITY;
  for (const ConstructedPiece& p : ch.pieces)
    for (double tp : p.theta_prime) tdev = std::max(tdev, std::abs(std::abs(tp) - 1.0));
  const auto v = rotational::chen_classify(ch.profile(), 64).verdict;
  ok &= tdev <= 1e-9 && v == rotational::ChenVerdict::NonTrivialChen;
  d << "; chen |theta' -+ 1| " << sci(tdev) << " " << rotational::to_string(v);
  return {ok, d.str()};
}

Outcome derivative_formulas() {
  const ProfileCurve pc = family(Ambient::Hyperbolic, "mink-pseudocircle");
  double worst = 0.0;
  std::size_t n = 0;
  for (double u : u_grid(pc, 16, 0.01))
    for (double v : v_grid(Ambient::Hyperbolic, 16)) {
      worst = std::max(worst, rotational::derivative_formula_residuals(pc, u, v).max());
      ++n;
    }
  return {worst <= 1e-6, std::to_string(n) + " points x 8 equations, max residual " + sci(worst) + " (<= 1e-6)"};
}

Outcome minimality_consistency() {
  std::vector<ProfileCurve> curves;
  for (const RegistryProfile& p : registry_profiles()) curves.push_back(p.curve);
  curves.push_back(construct_minimal_profile(Ambient::Elliptic, 1.0, 0.0).profile());
  curves.push_back(construct_minimal_profile(Ambient::Euclidean, 1.5, 0.2).profile());
  double worst = 0.0;
  std::size_t minimal_points = 0;
  for (const ProfileCurve& c : curves) {
    const SurfacePatch patch = rotational::build(c);
    for (double u : u_grid(c, 32))
      for (double v : v_grid(c.ambient(), 8)) {
        const InvariantSet s = evaluate_invariants(patch, u, v);
        if (euclid_norm(s.H) > 1e-9) continue;
        ++minimal_points;
        worst = std::max(worst, std::abs(s.varkappa * s.varkappa - s.k));
      }
  }
  return {minimal_points > 0 && worst <= 1e-7, std::to_string(minimal_points) +
                                                   " points with |H| <= 1e-9, max |varkappa^2 - k| = " + sci(worst) +
                                                   " (<= 1e-7)"};
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = std::string(CHENROT_CLI) + " " + args + " > " + stdout_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path work = fs::path(CHENROT_TEST_WORKDIR) / "acceptance";
  fs::remove_all(work);
  std::vector<std::string> runs[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path dir = work / ("run" + std::to_string(k));
    fs::create_directories(dir);
    if (run_cli("verify --out " + (dir / "verify").string(), dir / "verify.txt") != 0)
      return {false, "verify run " + std::to_string(k + 1) + " failed"};
    if (run_cli("analyze --ambient hyperbolic --family helix --grid 32x32 --out " + (dir / "analyze").string(),
                dir / "analyze.txt") != 0)
      return {false, "analyze run " + std::to_string(k + 1) + " failed"};
    for (const char* f : {"verify.txt", "verify/verify.json", "analyze.txt", "analyze/invariants.csv",
                          "analyze/summary.json"})
      runs[k].push_back(slurp(dir / f));
  }
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    if (runs[0][i].empty() || runs[0][i] != runs[1][i]) return {false, "output " + std::to_string(i) + " differs"};
    bytes += runs[0][i].size();
  }
  return {true, std::to_string(runs[0].size()) + " outputs, " + std::to_string(bytes) + " bytes identical across runs"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"flat normal connection", flat_normal_connection},
      {"closed-form agreement", closed_form_agreement},
      {"gauss oracle", gauss_oracle},
      {"allied identity", allied_identity},
      {"worked profile classification", proposition_coverage},
      {"constructor soundness", constructor_soundness},
      {"frame derivative formulas", derivative_formulas},
      {"minimality consistency", minimality_consistency},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
