#include "chenrot/profile_io.hpp"

#include <fstream>
#include <sstream>

#include "chenrot/error.hpp"
#include "json.hpp"

namespace chenrot {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw GeometryError(ErrorCode::InvalidSpec, msg); }

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) bad(std::string("samples.") + key + " must be an array");
  std::vector<double> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) bad(std::string("samples.") + key + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ProfileCurve parse_profile_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("profile spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("profile spec must be a JSON object");
  if (!doc.contains("ambient") || !doc["ambient"].is_string()) bad("profile spec needs a string 'ambient'");
  const Ambient amb = parse_ambient(doc["ambient"].get<std::string>());

  std::optional<Interval> domain;
  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      bad("'domain' must be [u_min, u_max]");
    domain = Interval{d[0].get<double>(), d[1].get<double>()};
  }

  if (!doc.contains("source") || !doc["source"].is_object()) bad("profile spec needs a 'source' object");
  const json& src = doc["source"];
  if (src.contains("family")) {
    if (!src["family"].is_string()) bad("source.family must be a string");
    FamilySpec fs;
    fs.name = src["family"].get<std::string>();
    if (src.contains("params")) {
      if (!src["params"].is_object()) bad("source.params must be an object");
      for (const auto& [k, v] : src["params"].items()) {
        if (!v.is_number()) bad("family parameter '" + k + "' must be a number");
        fs.params[k] = v.get<double>();
      }
    }
    return ProfileCurve::from_family(amb, fs, domain);
  }
  if (src.contains("samples")) {
    const json& s = src["samples"];
    if (!s.is_object()) bad("source.samples must be an object");
    TabulatedSamples ts{number_array(s, "u"), number_array(s, "x1"), number_array(s, "x2"), number_array(s, "r")};
    return ProfileCurve::from_samples(amb, std::move(ts), domain);
  }
  bad("source must contain 'family' or 'samples'");
}

ProfileCurve load_profile_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read profile spec '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile_spec(ss.str());
}

std::string write_profile_spec(const ProfileCurve& c) {
  json doc;
  doc["ambient"] = to_string(c.ambient());
  doc["domain"] = {c.domain().lo, c.domain().hi};
  if (const auto* f = std::get_if<FamilySpec>(&c.origin())) {
    json params = json::object();
    for (const auto& [k, v] : f->params) params[k] = v;
    doc["source"] = {{"family", f->name}, {"params", params}};
  } else {
    const auto& s = std::get<TabulatedSamples>(c.origin());
    doc["source"] = {{"samples", {{"u", s.u}, {"x1", s.x1}, {"x2", s.x2}, {"r", s.r}}}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace chenrot
