#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWork = fs::path(CHENROT_TEST_WORKDIR) / "cli";

int run(const std::string& args, const std::string& tag) {
  fs::create_directories(kWork);
  const std::string cmd = std::string(CHENROT_CLI) + " " + args + " > " + (kWork / (tag + ".stdout")).string() +
                          " 2> " + (kWork / (tag + ".stderr")).string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

std::string out(const std::string& name) { return (kWork / name).string(); }

}  // namespace

TEST_CASE("analyze writes the table and summary") {
  REQUIRE(run("analyze --ambient elliptic --family constant-r-theta --R 2 --grid 32x32 --out " + out("an"), "an") == 0);
  const json s = json::parse(slurp(kWork / "an" / "summary.json"));
  CHECK(s["aggregates"]["k_min"].get<double>() == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(s["aggregates"]["k_max"].get<double>() == doctest::Approx(-0.25).epsilon(1e-9));
  const std::string csv = slurp(kWork / "an" / "invariants.csv");
  CHECK(csv.rfind("u,v,E,F,G,L,M,N,k,varkappa,K,Hn1,Hn2,H_norm2,lambda,point_class\n", 0) == 0);
  CHECK(count_prefix(csv, "") == 32 * 32 + 1);
  CHECK(slurp(kWork / "an.stdout") == slurp(kWork / "an" / "summary.json"));
}

TEST_CASE("analyze aggregates match the emitted table") {
  REQUIRE(run("analyze --ambient hyperbolic --family helix --grid 12x9 --out " + out("agg"), "agg") == 0);
  const json s = json::parse(slurp(kWork / "agg" / "summary.json"));
  std::istringstream in(slurp(kWork / "agg" / "invariants.csv"));
  std::string line;
  std::getline(in, line);
  double kmin = INFINITY, kmax = -INFINITY, Kmin = INFINITY, Kmax = -INFINITY;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    const double k = std::stod(f[8]), K = std::stod(f[10]);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    Kmin = std::min(Kmin, K);
    Kmax = std::max(Kmax, K);
  }
  CHECK(s["aggregates"]["k_min"].get<double>() == kmin);
  CHECK(s["aggregates"]["k_max"].get<double>() == kmax);
  CHECK(s["aggregates"]["K_min"].get<double>() == Kmin);
  CHECK(s["aggregates"]["K_max"].get<double>() == Kmax);
}

TEST_CASE("pseudocircle is flat everywhere") {
  REQUIRE(run("analyze --ambient hyperbolic --family mink-pseudocircle --grid 16x16 --out " + out("pc"), "pc") == 0);
  const json s = json::parse(slurp(kWork / "pc" / "summary.json"));
  CHECK(s["aggregates"]["point_classes"]["Flat"].get<int>() == 256);
  CHECK(s["aggregates"]["K_min"].get<double>() == doctest::Approx(-1.0));
  CHECK(s["aggregates"]["K_max"].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("analyze --ambient elliptic --family constant-r-theta --grid 1x1 --out " + out("bad"), "g1") == 2);
  CHECK(run("analyze --ambient elliptic --family catenary --u-range 0,9 --out " + out("bad"), "ur") == 2);
  CHECK(run("analyze --ambient hyperbolic --family catenary --out " + out("bad"), "amb") == 2);
  CHECK(run("analyze --family catenary --out " + out("bad"), "noamb") == 2);
  CHECK(run("analyze --ambient elliptic --profile " + out("missing.json"), "missing") == 2);
  CHECK(run("classify --ambient elliptic --family catenary --grid 4", "cg") == 2);
  CHECK(run("frobnicate", "sub") == 2);
  CHECK(run("export --ambient hyperbolic --family mink-pseudocircle --projection drop:7 --out " + out("bad"), "proj") ==
        2);
}

TEST_CASE("classify verdicts") {
  REQUIRE(run("classify --ambient elliptic --family catenary", "c1") == 0);
  CHECK(json::parse(slurp(kWork / "c1.stdout"))["verdict"] == "MinimalTrivialChen");
  REQUIRE(run("classify --ambient hyperbolic --family mink-pseudocircle", "c2") == 0);
  const json c2 = json::parse(slurp(kWork / "c2.stdout"));
  CHECK(c2["verdict"] == "HyperplanarTrivialChen");
  CHECK(c2["hyperplane_witness"]["max_distance"].get<double>() <= 1e-8);
  REQUIRE(run("classify --ambient euclidean --family euclid-circle", "c3") == 0);
  CHECK(json::parse(slurp(kWork / "c3.stdout"))["verdict"] == "NonTrivialChen");
}

TEST_CASE("mixed regime exits with 3") {
  // The axis-plane projection is straight on half of the domain.
  std::ostringstream samples;
  samples.precision(17);
  samples << R"({"ambient": "euclidean", "source": {"samples": {"u": [)";
  std::ostringstream x1, x2, r;
  x1.precision(17);
  x2.precision(17);
  r.precision(17);
  const int n = 201;
  double px = 0.0, py = 0.0, th = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.01 * i;
    samples << (i ? "," : "") << u;
    x1 << (i ? "," : "") << px;
    x2 << (i ? "," : "") << py;
    r << (i ? "," : "") << 3.0 + 0.1 * u * u;
    const double tp = u < 1.0 ? 0.0 : 1.0;  // straight, then circular
    px += 0.01 * std::cos(th + 0.005 * tp);
    py += 0.01 * std::sin(th + 0.005 * tp);
    th += 0.01 * tp;
  }
  samples << "], \"x1\": [" << x1.str() << "], \"x2\": [" << x2.str() << "], \"r\": [" << r.str() << "]}}}";
  std::ofstream(kWork / "mixed.json") << samples.str();
  CHECK(run("classify --profile " + out("mixed.json"), "mixed") == 3);
  CHECK(slurp(kWork / "mixed.stderr").find("MixedRegime") != std::string::npos);
}

TEST_CASE("construct targets") {
  CHECK(run("construct --target chen --ambient hyperbolic --r const:1 --out " + out("c4"), "c4") == 4);

  REQUIRE(run("construct --target constant-k --ambient hyperbolic --r const:1 --k0 -1 --out " + out("ck"), "ck") == 0);
  const json ck = json::parse(slurp(kWork / "ck" / "report.json"));
  CHECK(std::abs(ck["k"]["mean"].get<double>() + 1.0) <= 1e-8);
  CHECK(ck["k"]["std"].get<double>() <= 1e-8);

  REQUIRE(run("construct --target minimal --ambient elliptic --r0 1 --r0p 0 --out " + out("mn"), "mn") == 0);
  const json p = json::parse(slurp(kWork / "mn" / "profile.json"));
  const auto& s = p["source"]["samples"];
  double worst = 0.0;
  for (std::size_t i = 0; i < s["u"].size(); ++i) {
    const double u = s["u"][i];
    worst = std::max(worst, std::abs(s["r"][i].get<double>() - std::sqrt(u * u + 1)));
  }
  CHECK(worst <= 1e-6);

  CHECK(run("construct --target constant-k --ambient hyperbolic --r const:1 --out " + out("bad"), "nok0") == 2);
  CHECK(run("construct --target chen --ambient hyperbolic --r bogus:1 --out " + out("bad"), "badr") == 2);
}

TEST_CASE("constructed profiles round-trip through classify") {
  REQUIRE(run("construct --target chen --ambient euclidean --r const:1 --out " + out("rt1"), "rt1") == 0);
  REQUIRE(run("classify --profile " + out("rt1/profile.json"), "rt1c") == 0);
  CHECK(json::parse(slurp(kWork / "rt1c.stdout"))["verdict"] == "NonTrivialChen");

  REQUIRE(run("construct --target minimal --ambient elliptic --r0 1 --r0p 0 --out " + out("rt2"), "rt2") == 0);
  REQUIRE(run("classify --profile " + out("rt2/profile.json"), "rt2c") == 0);
  CHECK(json::parse(slurp(kWork / "rt2c.stdout"))["verdict"] == "MinimalTrivialChen");

  REQUIRE(run("construct --target chen --ambient hyperbolic --r cosh:2 --domain -0.5,0.5 --out " + out("rt3"),
              "rt3") == 0);
  REQUIRE(run("classify --profile " + out("rt3/profile.json"), "rt3c") == 0);
  CHECK(json::parse(slurp(kWork / "rt3c.stdout"))["verdict"] == "NonTrivialChen");
}

TEST_CASE("export mesh") {
  REQUIRE(run("export --ambient hyperbolic --family mink-pseudocircle --grid 16x16 --out " + out("ex"), "ex") == 0);
  const std::string obj = slurp(kWork / "ex" / "surface.obj");
  CHECK(count_prefix(obj, "v ") == 256);
  CHECK(count_prefix(obj, "f ") == 450);
  CHECK(count_prefix(slurp(kWork / "ex" / "surface_vertices.csv"), "") == 257);
  REQUIRE(run("export --ambient elliptic --family catenary --grid 8x8 --projection stereo --out " + out("ex2"),
              "ex2") == 0);
  CHECK(count_prefix(slurp(kWork / "ex2" / "surface.obj"), "v ") == 64);
}

TEST_CASE("drop-coordinate export of a planar hyperbolic profile is isometric to its graph") {
  // x2 = 0: dropping e2 keeps (x1, r sinh v, r cosh v) exactly.
  REQUIRE(run("export --ambient hyperbolic --family polynomial-r --param c0=2 --param c1=0.3 --grid 5x5 "
              "--projection drop:2 --out " + out("iso"),
              "iso") == 0);
  std::istringstream obj(slurp(kWork / "iso" / "surface.obj"));
  std::istringstream side(slurp(kWork / "iso" / "surface_vertices.csv"));
  std::string line;
  std::getline(side, line);
  std::size_t checked = 0;
  while (std::getline(obj, line)) {
    if (line.rfind("v ", 0) != 0) continue;
    double x, y, z;
    std::istringstream(line.substr(2)) >> x >> y >> z;
    std::string row;
    std::getline(side, row);
    std::stringstream rs(row);
    std::string idx, us, vs;
    std::getline(rs, idx, ',');
    std::getline(rs, us, ',');
    std::getline(rs, vs, ',');
    const double u = std::stod(us), v = std::stod(vs), rr = 2.0 + 0.3 * u;
    CHECK(z * z - y * y == doctest::Approx(rr * rr).epsilon(1e-12));
    CHECK(y == doctest::Approx(rr * std::sinh(v)).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked == 25);
}

TEST_CASE("verify exit status and suite filter") {
  CHECK(run("verify --suite gauss", "vg") == 0);
  const std::string text = slurp(kWork / "vg.stdout");
  CHECK(count_prefix(text, "PASS  gauss") + 1 == count_prefix(text, ""));
  CHECK(run("verify --inject-fault flip-L-sign --suite second-form", "vf") == 1);
  CHECK(slurp(kWork / "vf.stdout").find("FAIL  second-form") != std::string::npos);
  CHECK(run("verify --suite nonsense", "vn") == 2);
  CHECK(run("verify --inject-fault melt", "vm") == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
  REQUIRE(run("analyze --ambient hyperbolic --family helix --grid 10x10 --out " + out("d1"), "d1") == 0);
  REQUIRE(run("analyze --ambient hyperbolic --family helix --grid 10x10 --out " + out("d2"), "d2") == 0);
  CHECK(slurp(kWork / "d1" / "invariants.csv") == slurp(kWork / "d2" / "invariants.csv"));
  CHECK(slurp(kWork / "d1" / "summary.json") == slurp(kWork / "d2" / "summary.json"));
}
