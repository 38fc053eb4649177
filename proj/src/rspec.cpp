#include "chenrot/rspec.hpp"

#include <cmath>
#include <sstream>

#include "chenrot/error.hpp"
#include "chenrot/numfmt.hpp"

namespace chenrot {

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw GeometryError(ErrorCode::InvalidSpec, "bad number in r-spec '" + whole + "'");
  }
  if (pos != s.size() || !std::isfinite(v))
    throw GeometryError(ErrorCode::InvalidSpec, "bad number in r-spec '" + whole + "'");
  return v;
}

}  // namespace

RSpec RSpec::constant(double R) {
  RSpec s;
  s.kind_ = Kind::Constant;
  s.params_ = {R};
  return s;
}

RSpec RSpec::polynomial(std::vector<double> coeffs) {
  RSpec s;
  s.kind_ = Kind::Polynomial;
  s.params_ = std::move(coeffs);
  if (s.params_.empty()) s.params_.push_back(0.0);
  return s;
}

RSpec RSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<double> values;
  if (!tail.empty()) {
    std::stringstream ss(tail);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_number(item, text));
  }
  RSpec s;
  if (head == "const" && values.size() == 1) {
    s.kind_ = Kind::Constant;
  } else if (head == "cosh" && values.size() == 1) {
    s.kind_ = Kind::Cosh;
  } else if (head == "poly" && !values.empty()) {
    s.kind_ = Kind::Polynomial;
  } else if (head == "sqrtquad" && values.empty() && colon == std::string::npos) {
    s.kind_ = Kind::SqrtQuad;
  } else {
    throw GeometryError(ErrorCode::InvalidSpec, "unrecognized r-spec '" + text + "'");
  }
  s.params_ = std::move(values);
  return s;
}

RJet RSpec::eval(double u) const {
  RJet j;
  switch (kind_) {
    case Kind::Constant:
      j.r = params_[0];
      break;
    case Kind::Cosh: {
      const double a = params_[0];
      const double c = std::cosh(a * u), s = std::sinh(a * u);
      j = {c, a * s, a * a * c, a * a * a * s};
      break;
    }
    case Kind::Polynomial: {
      // Horner for value and the first three derivatives.
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) {
        j.d3 = j.d3 * u + 3.0 * j.d2;
        j.d2 = j.d2 * u + 2.0 * j.d1;
        j.d1 = j.d1 * u + j.r;
        j.r = j.r * u + *it;
      }
      break;
    }
    case Kind::SqrtQuad: {
      const double q = u * u + 1.0, r = std::sqrt(q);
      j = {r, u / r, 1.0 / (q * r), -3.0 * u / (q * q * r)};
      break;
    }
  }
  return j;
}

std::string RSpec::to_string() const {
  switch (kind_) {
    case Kind::Constant: return "const:" + format_double(params_[0]);
    case Kind::Cosh: return "cosh:" + format_double(params_[0]);
    case Kind::SqrtQuad: return "sqrtquad";
    case Kind::Polynomial: {
      std::string s = "poly:";
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ',';
        s += format_double(params_[i]);
      }
      return s;
    }
  }
  return "";
}

}  // namespace chenrot
