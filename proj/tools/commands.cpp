#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chenrot/construct.hpp"
#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"
#include "chenrot/profile_io.hpp"
#include "chenrot/rotational.hpp"
#include "chenrot/verify.hpp"
#include "json.hpp"

namespace chenrot::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// JSON numbers: fold -0 to 0 so that output matches the CSV formatting.
double num(double x) { return x + 0.0; }

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || !std::isfinite(v)) throw ConfigError("cannot parse " + what + " from '" + s + "'");
  return v;
}

Interval parse_range(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError(what + " must be 'a,b', got '" + s + "'");
  const Interval r{parse_number(s.substr(0, comma), what), parse_number(s.substr(comma + 1), what)};
  if (!(r.hi > r.lo)) throw ConfigError(what + " must satisfy a < b");
  return r;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("--grid must be NUxNV, got '" + s + "'");
  const double nu = parse_number(s.substr(0, x), "--grid"), nv = parse_number(s.substr(x + 1), "--grid");
  if (nu != std::floor(nu) || nv != std::floor(nv) || nu < 2 || nv < 2)
    throw ConfigError("--grid needs at least 2x2 integer samples, got '" + s + "'");
  return {static_cast<std::size_t>(nu), static_cast<std::size_t>(nv)};
}

std::vector<double> linspace(Interval r, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = r.lo + r.length() * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

ProfileCurve make_profile(const ProfileArgs& a) {
  if (!a.profile_path.empty() && !a.family.empty()) throw ConfigError("give either --profile or --family, not both");
  if (!a.profile_path.empty()) {
    ProfileCurve c = load_profile_spec(a.profile_path);
    if (!a.ambient.empty() && parse_ambient(a.ambient) != c.ambient())
      throw ConfigError("--ambient " + a.ambient + " contradicts the profile spec (" + to_string(c.ambient()) + ")");
    return c;
  }
  if (a.family.empty()) throw ConfigError("a profile is required: --profile <path> or --family <name>");
  if (a.ambient.empty()) throw ConfigError("--ambient is required with --family");
  return ProfileCurve::from_family(parse_ambient(a.ambient), FamilySpec{a.family, a.params});
}

Interval u_range_of(const ProfileCurve& c, const std::string& s) {
  if (s.empty()) return c.domain();
  const Interval r = parse_range(s, "--u-range");
  if (r.lo < c.domain().lo || r.hi > c.domain().hi)
    throw ConfigError("--u-range " + s + " leaves the profile domain [" + format_double(c.domain().lo) + ", " +
                      format_double(c.domain().hi) + "]");
  return r;
}

Interval v_range_of(Ambient amb, const std::string& s) {
  return s.empty() ? rotational::default_v_range(amb) : parse_range(s, "--v-range");
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir.empty() ? "." : dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory '" + p.string() + "': " + ec.message());
  return p;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + p.string() + "'");
  out << text;
}

json profile_echo(const ProfileArgs& a, const ProfileCurve& c) {
  json j;
  j["ambient"] = to_string(c.ambient());
  j["description"] = c.describe();
  if (!a.profile_path.empty()) j["profile"] = a.profile_path;
  if (!a.family.empty()) {
    j["family"] = a.family;
    json p = json::object();
    for (const auto& [k, v] : a.params) p[k] = num(v);
    j["params"] = p;
  }
  j["domain"] = {num(c.domain().lo), num(c.domain().hi)};
  return j;
}

json classification_json(const rotational::ChenClassification& c) {
  return {{"verdict", rotational::to_string(c.verdict)},
          {"residual_kappa1", num(c.residual_kappa1)},
          {"min_abs_kappa1", num(c.min_abs_kappa1)},
          {"residual_case_i", num(c.residual_case_i)},
          {"residual_case_iii", num(c.residual_case_iii)},
          {"tol", num(c.tol)},
          {"grid", c.grid}};
}

json vec_json(const Vec4& v) { return {num(v[0]), num(v[1]), num(v[2]), num(v[3])}; }

// Aggregate over the values actually written to the table.
struct MinMax {
  double lo = INFINITY, hi = -INFINITY;
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  json to_json() const {
    if (lo > hi) return json(nullptr);
    return {{"min", num(lo)}, {"max", num(hi)}};
  }
};

}  // namespace

int guarded(const std::function<int()>& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidSpec:
      case ErrorCode::AmbientMismatch:
      case ErrorCode::InsufficientSamples:
        return kConfigError;
      case ErrorCode::NoAdmissibleRoot:
        return kEmptyAdmissible;
      default:
        return kGeometryError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

int cmd_analyze(const AnalyzeArgs& a) {
  const auto [nu, nv] = parse_grid(a.grid);
  if (!(a.tol >= 0.0)) throw ConfigError("--tol must be >= 0");
  const ProfileCurve c = make_profile(a.profile);
  const Interval ur = u_range_of(c, a.u_range);
  const Interval vr = v_range_of(c.ambient(), a.v_range);
  const fs::path out = prepare_out(a.out);

  const SurfacePatch patch = rotational::build(c);
  static const char* kColumns[] = {"u", "v", "E", "F", "G", "L", "M", "N", "k", "varkappa", "K",
                                   "Hn1", "Hn2", "H_norm2", "lambda", "point_class"};
  std::ostringstream csv;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) csv << (i ? "," : "") << kColumns[i];
  csv << "\n";
  MinMax k, vk, K, lam, hn;
  std::map<std::string, std::size_t> classes;
  std::size_t rows = 0;
  for (double u : linspace(ur, nu)) {
    for (double v : linspace(vr, nv)) {
      PipelineOptions po;
      po.frame = rotational::rotational_frame(c, u, v);
      po.point_tol = a.tol;
      const InvariantSet s = evaluate_invariants(patch, u, v, po);
      const auto h = s.H_components();
      // Round-trip through the printed form so aggregates match the table.
      auto put = [&](double x) {
        const std::string t = format_double(x);
        csv << t << ",";
        return parse_number(t, "value");
      };
      put(u);
      put(v);
      put(s.I.E);
      put(s.I.F);
      put(s.I.G);
      put(s.II.L);
      put(s.II.M);
      put(s.II.N);
      k.add(put(s.k));
      vk.add(put(s.varkappa));
      K.add(put(s.K));
      put(h[0]);
      put(h[1]);
      hn.add(put(s.H_norm2));
      if (s.lambda) {
        const std::string t = format_double(*s.lambda);
        csv << t;
        lam.add(std::abs(parse_number(t, "value")));
      }
      const char* pc = to_string(s.point_class);
      csv << "," << pc << "\n";
      ++classes[pc];
      ++rows;
    }
  }
  write_file(out / "invariants.csv", csv.str());

  json summary;
  summary["tool"] = {{"name", "chenrot"}, {"version", kToolVersion}};
  summary["command"] = "analyze";
  summary["config"] = {{"profile", profile_echo(a.profile, c)},
                       {"grid", {nu, nv}},
                       {"u_range", {num(ur.lo), num(ur.hi)}},
                       {"v_range", {num(vr.lo), num(vr.hi)}},
                       {"tol", num(a.tol)}};
  summary["table"] = {{"path", "invariants.csv"}, {"rows", rows}};
  const json km = k.to_json(), Km = K.to_json(), lm = lam.to_json(), hm = hn.to_json(), vm = vk.to_json();
  summary["aggregates"] = {{"k_min", km.is_null() ? json(nullptr) : km["min"]},
                           {"k_max", km.is_null() ? json(nullptr) : km["max"]},
                           {"varkappa_min", vm.is_null() ? json(nullptr) : vm["min"]},
                           {"varkappa_max", vm.is_null() ? json(nullptr) : vm["max"]},
                           {"K_min", Km.is_null() ? json(nullptr) : Km["min"]},
                           {"K_max", Km.is_null() ? json(nullptr) : Km["max"]},
                           {"abs_lambda_min", lm.is_null() ? json(nullptr) : lm["min"]},
                           {"abs_lambda_max", lm.is_null() ? json(nullptr) : lm["max"]},
                           {"H_norm2_min", hm.is_null() ? json(nullptr) : hm["min"]},
                           {"H_norm2_max", hm.is_null() ? json(nullptr) : hm["max"]},
                           {"point_classes", classes}};
  try {
    const auto cls = rotational::chen_classify(c.restricted(ur), std::max<std::size_t>(nu, 16));
    summary["classification"] = classification_json(cls);
  } catch (const GeometryError& e) {
    summary["classification"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  const std::string text = summary.dump(2) + "\n";
  write_file(out / "summary.json", text);
  std::cout << text;
  return kOk;
}

int cmd_classify(const ClassifyArgs& a) {
  if (a.grid < 16) throw ConfigError("--grid for classify needs at least 16 samples");
  const ProfileCurve full = make_profile(a.profile);
  const Interval ur = u_range_of(full, a.u_range);
  const ProfileCurve c = a.u_range.empty() ? full : full.restricted(ur);
  const auto cls = rotational::chen_classify(c, static_cast<std::size_t>(a.grid), a.tol);
  json j = classification_json(cls);
  j["profile"] = profile_echo(a.profile, c);
  j["tool"] = {{"name", "chenrot"}, {"version", kToolVersion}};
  if (cls.verdict == rotational::ChenVerdict::HyperplanarTrivialChen) {
    try {
      const auto w = rotational::hyperplane_witness(c, 32);
      j["hyperplane_witness"] = {{"normal", vec_json(w.normal)},
                                 {"base_point", vec_json(w.base_point)},
                                 {"max_distance", num(w.max_distance)},
                                 {"max_normal_derivative", num(w.max_normal_derivative)}};
    } catch (const GeometryError& e) {
      j["hyperplane_witness"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
  }
  const std::string text = j.dump(2) + "\n";
  if (!a.out.empty()) write_file(prepare_out(a.out) / "classification.json", text);
  std::cout << text;
  return kOk;
}

int cmd_construct(const ConstructArgs& a) {
  const ConstructTarget target = parse_construct_target(a.target);
  if (a.ambient.empty()) throw ConfigError("--ambient is required");
  const Ambient amb = parse_ambient(a.ambient);
  ConstructOptions opt;
  opt.domain = parse_range(a.domain, "--domain");
  opt.step = a.step;
  opt.branch = a.branch;
  opt.start = {a.theta0, a.x1_0, a.x2_0};

  ConstructionReport rep;
  json cfg = {{"target", a.target}, {"ambient", to_string(amb)}, {"domain", {num(opt.domain.lo), num(opt.domain.hi)}},
              {"step", num(opt.step)}};
  switch (target) {
    case ConstructTarget::Chen:
    case ConstructTarget::ConstantK: {
      if (a.r.empty()) throw ConfigError("--r is required for target " + a.target);
      const RSpec rs = RSpec::parse(a.r);
      cfg["r"] = rs.to_string();
      cfg["branch"] = a.branch;
      cfg["start"] = {{"theta0", num(a.theta0)}, {"x1_0", num(a.x1_0)}, {"x2_0", num(a.x2_0)}};
      if (target == ConstructTarget::Chen) {
        rep = construct_chen_profile(amb, rs, opt);
      } else {
        if (!a.k0) throw ConfigError("--k0 is required for target constant-k");
        cfg["k0"] = num(*a.k0);
        rep = construct_constant_k_profile(amb, rs, *a.k0, opt);
      }
      break;
    }
    case ConstructTarget::Minimal:
      if (!a.r0 || !a.r0p) throw ConfigError("--r0 and --r0p are required for target minimal");
      cfg["r0"] = num(*a.r0);
      cfg["r0p"] = num(*a.r0p);
      opt.start = {0.0, a.x1_0, a.x2_0};
      rep = construct_minimal_profile(amb, *a.r0, *a.r0p, opt);
      break;
  }

  const fs::path out = prepare_out(a.out);
  json pieces = json::array();
  for (std::size_t i = 0; i < rep.pieces.size(); ++i) {
    const ConstructedPiece& p = rep.pieces[i];
    const std::string name = i == 0 ? "profile.json" : "profile_" + std::to_string(i + 1) + ".json";
    write_file(out / name, write_profile_spec(p.profile));
    json pj = {{"file", name},
               {"domain", {num(p.profile.domain().lo), num(p.profile.domain().hi)}},
               {"samples", std::get<TabulatedSamples>(p.profile.origin()).u.size()},
               {"residual_condition", num(p.residual_condition)},
               {"worst_u", num(p.worst_u)},
               {"residual_unit_speed", num(p.residual_unit_speed)}};
    if (!p.theta_prime.empty()) {
      const auto [lo, hi] = std::minmax_element(p.theta_prime.begin(), p.theta_prime.end());
      pj["theta_prime"] = {{"min", num(*lo)}, {"max", num(*hi)}};
    }
    pieces.push_back(pj);
  }
  json failures = json::array();
  for (const Interval& f : rep.failures) failures.push_back({num(f.lo), num(f.hi)});

  json j;
  j["tool"] = {{"name", "chenrot"}, {"version", kToolVersion}};
  j["config"] = cfg;
  j["pieces"] = pieces;
  j["failures"] = failures;
  j["residual_condition"] = num(rep.residual_condition);
  j["worst_u"] = num(rep.worst_u);
  j["residual_unit_speed"] = num(rep.residual_unit_speed);
  if (target == ConstructTarget::Chen) j["max_root_residual"] = num(rep.max_root_residual);
  j["max_abs_lambda"] = num(rep.max_abs_lambda);
  j["max_H_norm"] = num(rep.max_H_norm);
  j["k"] = {{"mean", num(rep.k_mean)}, {"std", num(rep.k_std)}};
  j["K"] = {{"mean", num(rep.K_mean)}, {"std", num(rep.K_std)}, {"constant", rep.constant_K}};
  if (rep.truncated_at) j["truncated_at"] = num(*rep.truncated_at);
  try {
    j["classification"] = classification_json(rotational::chen_classify(rep.profile(), 64));
  } catch (const GeometryError& e) {
    j["classification"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  const std::string text = j.dump(2) + "\n";
  write_file(out / "report.json", text);
  std::cout << text;
  return kOk;
}

namespace {

struct Projection {
  int drop = -1;       // 0-based coordinate to drop, or -1 for stereographic
  double pole = NAN;   // stereographic pole height on e4 (NaN: automatic)
};

Projection parse_projection(const std::string& s, Ambient amb) {
  if (s.empty()) return {amb == Ambient::Hyperbolic ? 1 : 3, NAN};
  if (s.rfind("drop:", 0) == 0) {
    const std::string n = s.substr(5);
    if (n.size() == 1 && n[0] >= '1' && n[0] <= '4') return {n[0] - '1', NAN};
    if (n.size() == 2 && n[0] == 'e' && n[1] >= '1' && n[1] <= '4') return {n[1] - '1', NAN};
  }
  if (s == "stereo" || s == "stereographic") return {-1, NAN};
  if (s.rfind("stereo:", 0) == 0) {
    try {
      const double p = parse_number(s.substr(7), "--projection pole");
      if (p != 0.0) return {-1, p};
    } catch (const ConfigError&) {
    }
  }
  throw ConfigError("--projection must be drop:1..4 or stereo[:pole], got '" + s + "'");
}

}  // namespace

int cmd_export(const ExportArgs& a) {
  const auto [nu, nv] = parse_grid(a.grid);
  const ProfileCurve c = make_profile(a.profile);
  const Projection proj = parse_projection(a.projection, c.ambient());
  const Interval ur = u_range_of(c, a.u_range);
  const Interval vr = v_range_of(c.ambient(), a.v_range);
  const fs::path out = prepare_out(a.out);
  const SurfacePatch patch = rotational::build(c);

  struct Vertex {
    double u, v;
    Vec4 z;
    double k, K;
    PointClass pc;
  };
  std::vector<Vertex> verts;
  double max_x4 = 0.0;
  for (double u : linspace(ur, nu))
    for (double v : linspace(vr, nv)) {
      const InvariantSet s = evaluate_invariants(patch, u, v);
      verts.push_back({u, v, s.jet.z, s.k, s.K, s.point_class});
      max_x4 = std::max(max_x4, std::abs(s.jet.z[3]));
    }
  const double pole = std::isnan(proj.pole) ? 1.0 + 2.0 * max_x4 : proj.pole;

  std::ostringstream obj, side;
  obj << "# chenrot " << kToolVersion << " " << c.describe() << "\n";
  obj << "# projection " << (proj.drop >= 0 ? "drop:e" + std::to_string(proj.drop + 1) : "stereo:" + format_double(pole))
      << "\n";
  obj << "o surface\n";
  side << "index,u,v,k,K,point_class\n";
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Vertex& vx = verts[i];
    double p[3];
    if (proj.drop >= 0) {
      for (int q = 0, o = 0; q < 4; ++q)
        if (q != proj.drop) p[o++] = vx.z[q];
    } else {
      const double den = pole - vx.z[3];
      if (std::abs(den) < 1e-12) throw ConfigError("stereographic pole lies on the surface");
      for (int q = 0; q < 3; ++q) p[q] = pole * vx.z[q] / den;
    }
    obj << "v " << format_double(p[0]) << " " << format_double(p[1]) << " " << format_double(p[2]) << "\n";
    side << i + 1 << "," << format_double(vx.u) << "," << format_double(vx.v) << "," << format_double(vx.k) << ","
         << format_double(vx.K) << "," << to_string(vx.pc) << "\n";
  }
  for (std::size_t i = 0; i + 1 < nu; ++i)
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a00 = i * nv + j + 1, a01 = a00 + 1, a10 = a00 + nv, a11 = a10 + 1;
      obj << "f " << a00 << " " << a10 << " " << a11 << "\n";
      obj << "f " << a00 << " " << a11 << " " << a01 << "\n";
    }
  write_file(out / "surface.obj", obj.str());
  write_file(out / "surface_vertices.csv", side.str());
  std::cout << "wrote " << (out / "surface.obj").string() << " (" << verts.size() << " vertices, "
            << 2 * (nu - 1) * (nv - 1) << " faces) and " << (out / "surface_vertices.csv").string() << "\n";
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  for (const std::string& s : a.suites) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) opt.suites.push_back(item);
  }
  if (!a.fault.empty()) {
    if (a.fault != "flip-L-sign") throw ConfigError("unknown fault '" + a.fault + "' (known: flip-L-sign)");
    opt.fault.flip_L_sign = true;
  }
  const std::vector<VerifyRow> rows = run_verify(opt);
  std::size_t failed = 0;
  json arr = json::array();
  for (const VerifyRow& r : rows) {
    failed += !r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.suite << "  " << r.check << "  [" << r.subject
              << "]  max=" << format_double(r.value) << "  threshold=" << format_double(r.threshold) << "\n";
    arr.push_back({{"suite", r.suite},
                   {"check", r.check},
                   {"subject", r.subject},
                   {"max_residual", num(r.value)},
                   {"threshold", num(r.threshold)},
                   {"pass", r.pass}});
  }
  std::cout << rows.size() << " checks, " << failed << " failed\n";
  if (!a.out.empty()) {
    json j = {{"tool", {{"name", "chenrot"}, {"version", kToolVersion}}},
              {"fault", a.fault.empty() ? json(nullptr) : json(a.fault)},
              {"checks", arr},
              {"failed", failed}};
    write_file(prepare_out(a.out) / "verify.json", j.dump(2) + "\n");
  }
  return failed == 0 ? kOk : kCheckFailed;
}

}  // namespace chenrot::cli
