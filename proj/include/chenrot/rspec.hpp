#pragma once

#include <string>
#include <vector>

namespace chenrot {

/// Radius function r(u) with derivatives through third order.
struct RJet {
  double r = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

/// Analytic radius profile parsed from the grammar
///   const:R | cosh:a | poly:c0,c1,c2,... | sqrtquad
/// where cosh:a is cosh(a u) and sqrtquad is sqrt(u^2 + 1).
class RSpec {
 public:
  enum class Kind { Constant, Cosh, Polynomial, SqrtQuad };

  static RSpec parse(const std::string& text);
  static RSpec constant(double R);
  static RSpec polynomial(std::vector<double> coeffs);

  RJet eval(double u) const;
  std::string to_string() const;
  Kind kind() const { return kind_; }

 private:
  Kind kind_ = Kind::Constant;
  std::vector<double> params_;
};

}  // namespace chenrot
