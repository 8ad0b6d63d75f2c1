#include "belyi/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace belyi {

namespace {

const std::vector<std::string> kXY{"x", "y"};

RationalFunction ratio(const char* num, const char* den) {
  return {parse_polynomial(num, kXY), parse_polynomial(den, kXY)};
}

}  // namespace

CurveModel fermat_quartic_curve() {
  // x^4 + y^4 = 0 has four points at infinity, none in supp(D0)
  return CurveModel::make("fermat4", parse_polynomial("x^4 + y^4 - 1", kXY), 3, true);
}

RRData fermat_quartic_rr(int t) {
  if (t < 0 || t > 10) throw std::invalid_argument("fermat4 basis fixture covers 0 <= t <= 10, got " + std::to_string(t));
  const char* n = "x^3 + x^2 + x + 1";
  const char* n4 = "4*x^3 + 4*x^2 + 4*x + 4 - x^2*y^4 - 2*x*y^4 - 3*y^4";
  std::vector<RationalFunction> all{
      ratio("1", "1"),
      ratio(n, "y^3"),
      ratio(n, "y^4"),
      ratio(n4, "4*y^6"),
      ratio(n4, "4*y^7"),
      ratio(n4, "4*y^8"),
      ratio("16*x^3 + 16*x^2 + 16*x + 16 - 6*x^3*y^4 - 10*x^2*y^4 + x*y^8 - 14*x*y^4 + 3*y^8 - 18*y^4", "6*y^9"),
      ratio("32*x^3 + 32*x^2 + 32*x + 32 - 3*x^2*y^8 - 8*x^2*y^4 - 4*x*y^8 - 16*x*y^4 - 3*y^8 - 24*y^4", "32*y^10"),
  };
  const std::vector<int> tiers{0, 3, 4, 6, 7, 8, 9, 10};
  RRData rr;
  rr.d0 = {DivisorPoint{std::make_pair(Rational(1), Rational(0)), 1}};
  rr.t = t;
  rr.pole_orders.resize(1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (tiers[i] > t) break;
    rr.basis.push_back(all[i]);
    rr.tiers.push_back(tiers[i]);
    rr.pole_orders[0].push_back(-tiers[i]);
  }
  return rr;
}

CurveModel projective_line_curve() { return CurveModel::make("p1", parse_polynomial("y", kXY), 0, false); }

RRData projective_line_rr(int t) {
  if (t < 0) throw std::invalid_argument("p1 basis needs t >= 0");
  RRData rr;
  rr.d0 = {DivisorPoint{std::nullopt, 1}};
  rr.t = t;
  rr.pole_orders.resize(1);
  for (int i = 0; i <= t; ++i) {
    rr.basis.push_back(RationalFunction::polynomial(MultiPoly::monomial({i, 0}, 1)));
    rr.tiers.push_back(i);
    rr.pole_orders[0].push_back(-i);
  }
  return rr;
}

CurveFixture curve_fixture(std::string_view name) {
  if (name == "fermat4") return {fermat_quartic_curve(), fermat_quartic_rr};
  if (name == "p1") return {projective_line_curve(), projective_line_rr};
  throw ParseError("unknown curve fixture '" + std::string(name) + "' (expected fermat4 or p1)");
}

}  // namespace belyi
