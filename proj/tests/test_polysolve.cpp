#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "belyi/groebner.hpp"
#include "belyi/system_io.hpp"

using namespace belyi;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

MultiPoly P(const char* text, const std::vector<std::string>& names = kXY) { return parse_polynomial(text, names); }

constexpr MonomialOrder kOrders[] = {MonomialOrder::lex, MonomialOrder::grlex, MonomialOrder::grevlex};

void check_certificate(const std::vector<MultiPoly>& gens, const GroebnerResult& r, MonomialOrder order) {
  REQUIRE(r.complete());
  CHECK(is_groebner_basis(r.basis, order));
  for (const auto& g : gens) CHECK(reduce(g, r.basis, order).is_zero());
  // reduced: no term of any element is divisible by another leading term
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    CHECK(r.basis[i].leading_coefficient(order) == 1);
    for (std::size_t j = 0; j < r.basis.size(); ++j) {
      if (i == j) continue;
      for (const auto& [e, c] : r.basis[i].terms()) CHECK_FALSE(divides(r.basis[j].leading_exponent(order), e));
    }
  }
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  auto p = P("x^2 - 1");
  CHECK(p * P("y") == P("x^2*y - y"));
  CHECK((P("x + y")).pow(2) == P("x^2 + 2*x*y + y^2"));
  CHECK(P("3/2*x^2*y - x + 1").to_string(kXY) == "3/2*x^2*y - x + 1");
  CHECK(P("x^3*y^2").derivative(0) == P("3*x^2*y^2"));
  CHECK(P("x^2 + y").evaluate({Rational(2), Rational(-1, 3)}) == Rational(11, 3));
  CHECK(P("x*y").substitute({P("x + 1"), P("x")}) == P("x^2 + x"));
  CHECK(P("6*x^2*y + 4*x*y^3").monomial_content() == Exponent{1, 1});
  CHECK(P("1/2*x + 1/3").primitive_part() == P("3*x + 2"));
  CHECK(P("0").is_zero());
  CHECK(P("x - x").is_zero());
  CHECK(P("x^2*y + y^3").total_degree() == 3);
  CHECK_THROWS_AS(P("2x"), ParseError);
  CHECK_THROWS_AS(P("x + w"), ParseError);
  CHECK_THROWS_AS(P("(x + 1)"), ParseError);
  CHECK_THROWS_AS(P("x") + P("x", kXYZ), std::invalid_argument);
}

TEST_CASE("monomial orders") {
  Exponent a{2, 0, 0}, b{1, 2, 0}, c{0, 0, 3}, d{1, 0, 1};
  CHECK(compare_monomials(a, b, MonomialOrder::lex) > 0);
  CHECK(compare_monomials(a, b, MonomialOrder::grlex) < 0);
  CHECK(compare_monomials(b, c, MonomialOrder::grlex) > 0);
  CHECK(compare_monomials(b, c, MonomialOrder::grevlex) > 0);
  // x*z vs y^2 separates grlex from grevlex in degree 2
  Exponent xz{1, 0, 1}, y2{0, 2, 0};
  CHECK(compare_monomials(xz, y2, MonomialOrder::grlex) > 0);
  CHECK(compare_monomials(xz, y2, MonomialOrder::grevlex) < 0);
  CHECK(compare_monomials(d, d, MonomialOrder::grevlex) == 0);
  CHECK(parse_monomial_order("grevlex") == MonomialOrder::grevlex);
  CHECK_THROWS_AS(parse_monomial_order("deglex2"), ParseError);
}

TEST_CASE("reduce examples") {
  CHECK(reduce(P("x^2 - 1"), {P("x - 1")}, MonomialOrder::grlex).is_zero());
  auto p = P("x^3*y - 7/2*y + 1");
  CHECK(reduce(p, {}, MonomialOrder::grlex) == p);
  // x^2 y -> y^2 -> 1 under graded-lex
  CHECK(reduce(P("x^2*y"), {P("x^2 - y"), P("y^2 - 1")}, MonomialOrder::grlex) == P("1"));
  CHECK_THROWS_AS(reduce(P("x"), {P("x", kXYZ)}, MonomialOrder::grlex), std::invalid_argument);
}

TEST_CASE("buchberger examples") {
  for (auto order : kOrders) {
    auto unit = buchberger({P("x"), P("x - 1")}, order);
    CHECK(unit.complete());
    CHECK(unit.is_unit());

    auto principal = buchberger({P("x^2 - 1")}, order);
    REQUIRE(principal.basis.size() == 1);
    CHECK(principal.basis[0] == P("x^2 - 1"));

    std::vector<MultiPoly> circle{P("x^2 + y^2 - 1"), P("x - y")};
    auto r = buchberger(circle, order);
    check_certificate(circle, r, order);
    bool has = false;
    for (const auto& g : r.basis) has = has || g == P("y^2 - 1/2");
    CHECK(has);  // 2y^2 - 1 up to the monic normalization
  }
  CHECK_THROWS_AS(buchberger({}, MonomialOrder::grlex), std::invalid_argument);
}

TEST_CASE("emptiness examples") {
  CHECK(is_empty_variety({P("x"), P("x - 1")}, MonomialOrder::grlex).verdict == Verdict::empty);
  CHECK(is_empty_variety({P("x^2 - 1")}, MonomialOrder::grlex).verdict == Verdict::nonempty);
  CHECK(is_empty_variety({P("0")}, MonomialOrder::grlex).verdict == Verdict::nonempty);
  // x^2 + 1 has no rational root but is nonempty over the algebraic closure.
  CHECK(is_empty_variety({P("x^2 + 1")}, MonomialOrder::lex).verdict == Verdict::nonempty);
  CHECK(is_empty_variety({P("x*y - 1"), P("x"), P("y^3 - y")}, MonomialOrder::grevlex).verdict == Verdict::empty);
  CHECK(to_string(Verdict::unknown) == "unknown");
}

TEST_CASE("limits give unknown, never a wrong verdict") {
  std::vector<MultiPoly> cyclic3{P("x + y + z", kXYZ), P("x*y + y*z + z*x", kXYZ), P("x*y*z - 1", kXYZ)};
  GroebnerLimits tiny;
  tiny.max_steps = 1;
  auto r = is_empty_variety(cyclic3, MonomialOrder::grevlex, tiny);
  CHECK(r.verdict == Verdict::unknown);
  CHECK_FALSE(r.groebner.limit_reason.empty());
  CHECK(r.groebner.stats.steps <= 1);

  GroebnerLimits low_degree;
  low_degree.max_degree = 1;
  CHECK(is_empty_variety(cyclic3, MonomialOrder::lex, low_degree).verdict == Verdict::unknown);

  auto full = is_empty_variety(cyclic3, MonomialOrder::grevlex);
  CHECK(full.verdict == Verdict::nonempty);
  check_certificate(cyclic3, full.groebner, MonomialOrder::grevlex);
}

TEST_CASE("systems with known rational points are nonempty under every order") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rational> pt{Rational(coef(rng)), Rational(coef(rng), 2), Rational(coef(rng))};
    std::vector<MultiPoly> gens;
    for (int k = 0; k < 3; ++k) {
      MultiPoly g(3);
      for (int t = 0; t < 4; ++t) {
        Exponent e{std::abs(coef(rng)) % 3, std::abs(coef(rng)) % 2, std::abs(coef(rng)) % 2};
        g.add_term(e, Rational(coef(rng)));
      }
      g -= MultiPoly::constant(3, g.evaluate(pt));
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    std::optional<Verdict> seen;
    for (auto order : kOrders) {
      auto r = is_empty_variety(gens, order);
      if (r.verdict == Verdict::unknown) continue;
      CHECK(r.verdict == Verdict::nonempty);
      check_certificate(gens, r.groebner, order);
      if (seen) CHECK(*seen == r.verdict);
      seen = r.verdict;
    }
  }
}

TEST_CASE("verdicts agree across orders on inconsistent systems") {
  std::mt19937 rng(32);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 15; ++trial) {
    // g and g + c with c != 0 have no common zero
    MultiPoly g(2);
    for (int t = 0; t < 4; ++t) g.add_term({std::abs(coef(rng)) % 3, std::abs(coef(rng)) % 3}, Rational(coef(rng)));
    int c = coef(rng);
    if (c == 0) c = 5;
    std::vector<MultiPoly> gens{g * P("x + y"), g * P("x + y") + MultiPoly::constant(2, c), P("x*y - 2")};
    for (auto order : kOrders) {
      auto r = is_empty_variety(gens, order);
      CHECK(r.verdict == Verdict::empty);
      CHECK(r.groebner.is_unit());
    }
  }
}

TEST_CASE("system format round trip") {
  PolynomialSystem sys;
  sys.variables = {"a1", "xP1", "yP1"};
  sys.comments = {"demo"};
  sys.equations = {parse_polynomial("3*a1*xP1^2 - 1/2*yP1 + 1", sys.variables),
                   parse_polynomial("0", sys.variables), parse_polynomial("-a1^3*yP1 + xP1", sys.variables)};
  CHECK(format_equation(sys.equations[0], sys.variables) == "+3*a1*xP1^2 -1/2*yP1 +1");
  CHECK(format_equation(sys.equations[1], sys.variables) == "0");
  std::string text = export_system(sys);
  auto back = parse_system(text);
  CHECK(back.variables == sys.variables);
  CHECK(back.equations == sys.equations);
  CHECK(export_system(back) == text);
  CHECK_THROWS_AS(parse_system("var x\npoly: +q\n"), ParseError);
  CHECK_THROWS_AS(parse_system("var x\nbogus line\n"), ParseError);

  sys.chart_request = "point_at_infinity P1";
  auto flagged = parse_system(export_system(sys));
  REQUIRE(flagged.chart_request.has_value());
  CHECK(solve_system(flagged, MonomialOrder::grevlex).verdict == Verdict::unknown);
}
