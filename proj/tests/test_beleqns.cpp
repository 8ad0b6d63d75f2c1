#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "belyi/beleqns.hpp"
#include "belyi/fixtures.hpp"
#include "belyi/system_io.hpp"

using namespace belyi;

namespace {

const std::vector<std::string> kXY{"x", "y"};

RamificationType rt(const char* text) { return parse_ramification_type(text); }

SystemCase find_case(const std::vector<SystemCase>& cases, const RamificationType& lambda, const std::string& text) {
  for (const auto& c : cases)
    if (c.describe(lambda) == text) return c;
  FAIL("no case " << text);
  return {};
}

// Assigns the distinctness witnesses z_AB = 1/(x_A - x_B) (or the y
// difference) and evaluates every equation at the point.
std::vector<Rational> residuals(const PolynomialSystem& sys, const RRData& rr, std::map<std::string, Rational> values) {
  auto coord = [&](const std::string& point, char axis) -> Rational {
    if (point.rfind("D0", 0) == 0) {
      const auto& aff = *rr.d0.at(std::stoul(point.substr(2)) - 1).affine;
      return axis == 'x' ? aff.first : aff.second;
    }
    auto it = values.find(std::string(1, axis) + point);
    return it == values.end() ? Rational(0) : it->second;
  };
  for (const auto& v : sys.variables) {
    if (v[0] != 'z') continue;
    auto cut = v.find('_');
    std::string a = v.substr(1, cut - 1), b = v.substr(cut + 1);
    Rational dx = coord(a, 'x') - coord(b, 'x');
    Rational dy = coord(a, 'y') - coord(b, 'y');
    REQUIRE_MESSAGE((dx != 0 || dy != 0), v);
    values[v] = dx != 0 ? Rational(1) / dx : Rational(1) / dy;
  }
  std::vector<Rational> pt;
  for (const auto& v : sys.variables) pt.push_back(values.count(v) ? values.at(v) : Rational(0));
  std::vector<Rational> out;
  for (const auto& e : sys.equations) out.push_back(e.evaluate(pt));
  return out;
}

void check_solution(const PolynomialSystem& sys, const RRData& rr, const std::map<std::string, Rational>& values) {
  REQUIRE_FALSE(sys.chart_request.has_value());
  auto res = residuals(sys, rr, values);
  for (std::size_t i = 0; i < res.size(); ++i)
    CHECK_MESSAGE(res[i] == 0, "equation " << i << ": " << format_equation(sys.equations[i], sys.variables));
}

Rational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST_CASE("t and Riemann-Roch dimension") {
  CHECK(compute_t(7, 3, 1) == 10);
  CHECK(compute_t(1, 0, 1) == 1);
  CHECK(compute_t(7, 3, 2) == 5);
  CHECK(expected_rr_dimension(10, 1, 3) == 8);
  CHECK(expected_rr_dimension(1, 1, 0) == 2);
  CHECK(expected_rr_dimension(4, 1, 1) == 4);
  CHECK_THROWS_AS(expected_rr_dimension(4, 1, 3), std::invalid_argument);
  CHECK(fermat_quartic_rr(10).n() == 8);
  CHECK(fermat_quartic_rr(7).n() == 5);
  CHECK_THROWS_AS(fermat_quartic_rr(11), std::invalid_argument);
}

TEST_CASE("implicit slope") {
  auto fermat = implicit_slope(fermat_quartic_curve());
  CHECK(fermat.num == parse_polynomial("-x^3", kXY));
  CHECK(fermat.den == parse_polynomial("y^3", kXY));
  auto circle = implicit_slope(CurveModel::make("circle", parse_polynomial("x^2 + y^2 - 1", kXY), 0, false));
  CHECK(circle.num == parse_polynomial("-x", kXY));
  CHECK(circle.den == parse_polynomial("y", kXY));
  auto line = implicit_slope(projective_line_curve());
  CHECK(line.num.is_zero());
  CHECK_THROWS_AS(implicit_slope(CurveModel::make("vertical", parse_polynomial("x", kXY), 0, false)), ChartFailure);
}

TEST_CASE("Fermat basis fixture") {
  auto rr = fermat_quartic_rr(10);
  CHECK_NOTHROW(rr.validate());
  CHECK(rr.tiers == std::vector<int>{0, 3, 4, 6, 7, 8, 9, 10});
  CHECK(rr.d0_degree() == 1);
}

TEST_CASE("vanishing equations on the line chart") {
  // ring: a1 a2 a3 xP yP
  const std::vector<std::string> names{"a1", "a2", "a3", "xP", "yP"};
  std::vector<MultiPoly> coeffs{MultiPoly::variable(5, 0), MultiPoly::variable(5, 1), MultiPoly::variable(5, 2)};
  auto rr = projective_line_rr(2);
  auto ve = vanishing_equations(coeffs, rr.basis, 3, 4, 2, projective_line_curve());
  REQUIRE(ve.conditions.size() == 2);
  CHECK(ve.conditions[0] == parse_polynomial("a1 + a2*xP + a3*xP^2", names));
  CHECK(ve.conditions[1] == parse_polynomial("a2 + 2*a3*xP", names));
  CHECK(ve.membership == parse_polynomial("yP", names));

  auto once = vanishing_equations(coeffs, rr.basis, 3, 4, 1, projective_line_curve());
  CHECK(once.conditions.size() == 1);
}

TEST_CASE("vanishing equations on a circle agree with implicit differentiation") {
  // g = y on x^2 + y^2 = 1: dy/dx = -x/y, d2y/dx2 = -1/y^3. The affine
  // chart assumes f_y = 2y is nonzero at the point, so the factor y is
  // cancelled and the order-0 condition becomes the unit.
  auto circle = CurveModel::make("circle", parse_polynomial("x^2 + y^2 - 1", kXY), 0, false);
  std::vector<RationalFunction> basis{RationalFunction::polynomial(parse_polynomial("y", kXY))};
  std::vector<MultiPoly> coeffs{MultiPoly::constant(2, 1)};
  auto ve = vanishing_equations(coeffs, basis, 0, 1, 3, circle);
  REQUIRE(ve.conditions.size() == 3);
  CHECK(ve.conditions[0] == parse_polynomial("1", kXY));
  CHECK(ve.conditions[1] == parse_polynomial("-x", kXY));
  CHECK(ve.conditions[2] == parse_polynomial("-x^2 - y^2", kXY));
}

TEST_CASE("distinctness constraints") {
  const std::vector<std::string> names{"xP", "yP", "xQ", "yQ"};
  std::vector<PointCoords> two{{"P", MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)},
                               {"Q", MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)}};
  auto d = distinctness_constraints(two);
  REQUIRE(d.new_variables == std::vector<std::string>{"zP_Q"});
  REQUIRE(d.equations.size() == 1);
  std::vector<std::string> with_z = names;
  with_z.push_back("zP_Q");
  auto fx = parse_polynomial("xP*zP_Q - xQ*zP_Q - 1", with_z);
  auto fy = parse_polynomial("yP*zP_Q - yQ*zP_Q - 1", with_z);
  CHECK(d.equations[0] == fx * fy);

  auto same = distinctness_constraints(two, {{0, 1}});
  CHECK(same.new_variables.empty());
  REQUIRE(same.equations.size() == 2);
  CHECK(same.equations[0] == parse_polynomial("xP - xQ", names));
  CHECK(same.equations[1] == parse_polynomial("yP - yQ", names));

  std::vector<PointCoords> five;
  for (int i = 0; i < 5; ++i)
    five.push_back({"T" + std::to_string(i), MultiPoly::variable(10, 2 * i), MultiPoly::variable(10, 2 * i + 1)});
  auto d5 = distinctness_constraints(five);
  CHECK(d5.new_variables.size() == 10);
  CHECK(d5.equations.size() == 10);

  auto merged = distinctness_constraints(five, {{0, 1}, {1, 2}});
  CHECK(merged.new_variables.size() == 7);  // pairs across {0,1,2}, {3}, {4}
  CHECK(merged.equations.size() == 4 + 7);

  std::vector<std::pair<std::size_t, std::size_t>> clash{{0, 2}};
  CHECK_THROWS_AS(distinctness_constraints(five, {{0, 1}, {1, 2}}, clash), std::invalid_argument);
}

TEST_CASE("case enumeration") {
  auto fermat = fermat_quartic_curve();
  auto rr = fermat_quartic_rr(10);
  CHECK(enumerate_cases(fermat, rr, rt("3/3/3")).empty());
  CHECK(enumerate_cases(fermat, rr, rt("2/1,1/2")).empty());

  auto lambda = rt("7/7/7");
  auto cases = enumerate_cases(fermat, rr, lambda);
  REQUIRE_FALSE(cases.empty());
  CHECK(cases.front().describe(lambda) == "k=8 l=8 m=10 mu=[3] pattern=none chart=affine");
  std::size_t general = 0, identified = 0, flagged = 0;
  for (const auto& c : cases) {
    CHECK(c.k >= 1);
    CHECK(c.l >= 1);
    CHECK(c.m == std::max(rr.tiers[c.k - 1], rr.tiers[c.l - 1]));
    CHECK(c.mu.total() == c.m - 7);
    if (c.chart != ChartKind::affine)
      ++flagged;
    else if (c.pattern.empty())
      ++general;
    else
      ++identified;
  }
  // each base case has 3 + len(mu) points, each identifiable with D0 and
  // flagged for two charts
  std::size_t expect_id = 0, expect_flag = 0, expect_general = 0;
  for (int k = 1; k <= 8; ++k)
    for (int l = 1; l <= 8; ++l) {
      int m = std::max(rr.tiers[k - 1], rr.tiers[l - 1]);
      if (m < 7) continue;
      for (const auto& mu : m == 7 ? std::vector<CycleType>{CycleType{}} : enumerate_partitions(m - 7)) {
        ++expect_general;
        expect_id += 3 + mu.length();
        expect_flag += 2 * (3 + mu.length());
      }
    }
  CHECK(general == expect_general);
  CHECK(identified == expect_id);
  CHECK(flagged == expect_flag);

  auto p1 = enumerate_cases(projective_line_curve(), projective_line_rr(2), rt("2/1,1/2"));
  REQUIRE_FALSE(p1.empty());
  CHECK(p1.front().describe(rt("2/1,1/2")) == "k=3 l=3 m=2 mu=[] pattern=none chart=affine");
  for (const auto& c : p1) CHECK(c.chart == ChartKind::affine);
}

TEST_CASE("Fermat general case counts") {
  auto fermat = fermat_quartic_curve();
  auto rr = fermat_quartic_rr(compute_t(7, 3, 1));
  auto lambda = rt("7/7/7");
  auto sys = build_system(fermat, rr, lambda, enumerate_cases(fermat, rr, lambda).front());
  const auto& n = sys.counts;
  CHECK(n.coefficient_variables == 8 + 7);
  CHECK(n.coordinate_variables == 2 * 4);
  CHECK(n.distinctness_variables == 10);
  CHECK(n.variables_without_gadget() == 33);
  CHECK(n.membership_equations + n.vanishing_equations == 8 * 3 + 7);
  CHECK(n.distinctness_equations == 10);
  CHECK(n.equations_without_gadget() == 41);
  CHECK(n.gadget_variables == 1);
  CHECK(n.gadget_equations == 1);
  CHECK(n.total_variables() == 34);
  CHECK(n.total_equations() == 42);
  CHECK(sys.variables.size() == 34);
  CHECK(sys.equations.size() == 42);
  CHECK(sys.variables.back() == "w");
  CHECK(sys.imposed_vanishing_on_a == 10);
}

TEST_CASE("imposed vanishing on a equals m d0") {
  auto check_all = [](const CurveModel& curve, const RRData& rr, const RamificationType& lambda) {
    for (const auto& c : enumerate_cases(curve, rr, lambda))
      CHECK(build_system(curve, rr, lambda, c).imposed_vanishing_on_a == c.m * rr.d0_degree());
  };
  check_all(fermat_quartic_curve(), fermat_quartic_rr(10), rt("7/7/7"));
  for (const char* t : {"2/1,1/2", "2,1/2,1/3", "3/3/1,1,1", "2,2/3,1/3,1"}) {
    auto lambda = rt(t);
    check_all(projective_line_curve(), projective_line_rr(compute_t(lambda.degree, 0, 1)), lambda);
  }
}

TEST_CASE("phi = x^2 composed with a Moebius map solves the general d=2 system") {
  auto lambda = rt("2/1,1/2");
  auto rr = projective_line_rr(2);
  auto curve = projective_line_curve();
  auto c = enumerate_cases(curve, rr, lambda).front();
  auto sys = build_system(curve, rr, lambda, c);
  CHECK(sys.variables.size() == 20);
  CHECK(sys.equations.size() == 17);
  // 4x^2 / (x-1)^2: a = 4x^2, b = x^2 - 2x + 1, a - b = (3x - 1)(x + 1)
  check_solution(sys, rr,
                 {{"a3", q(4)}, {"b1", q(1)}, {"b2", q(-2)}, {"xP1", q(0)}, {"xQ1", q(1, 3)}, {"xQ2", q(-1)},
                  {"xR1", q(1)}, {"w", q(1, 4)}});
  // the same values with a wrong a coefficient leave a residual
  auto res = residuals(sys, rr,
                       {{"a3", q(5)}, {"b1", q(1)}, {"b2", q(-2)}, {"xP1", q(0)}, {"xQ1", q(1, 3)}, {"xQ2", q(-1)},
                        {"xR1", q(1)}, {"w", q(1, 4)}});
  CHECK(std::any_of(res.begin(), res.end(), [](const Rational& r) { return r != 0; }));
}

TEST_CASE("phi = x^2 solves the d=2 case with R at infinity") {
  auto lambda = rt("2/1,1/2");
  auto rr = projective_line_rr(2);
  auto curve = projective_line_curve();
  auto c = find_case(enumerate_cases(curve, rr, lambda), lambda, "k=3 l=1 m=2 mu=[] pattern=R1=D01 chart=affine");
  auto sys = build_system(curve, rr, lambda, c);
  CHECK(sys.counts.identification_equations == 0);
  check_solution(sys, rr, {{"a3", q(1)}, {"xP1", q(0)}, {"xQ1", q(1)}, {"xQ2", q(-1)}, {"w", q(1)}});
}

TEST_CASE("phi = 3x^2 - 2x^3 solves the (2,1),(2,1),(3) case") {
  auto lambda = rt("2,1/2,1/3");
  auto rr = projective_line_rr(compute_t(3, 0, 1));
  auto curve = projective_line_curve();
  auto c = find_case(enumerate_cases(curve, rr, lambda), lambda, "k=4 l=1 m=3 mu=[] pattern=R1=D01 chart=affine");
  auto sys = build_system(curve, rr, lambda, c);
  // phi = x^2 (3 - 2x), phi - 1 = -(x - 1)^2 (2x + 1)
  check_solution(sys, rr,
                 {{"a3", q(3)}, {"a4", q(-2)}, {"xP1", q(0)}, {"xP2", q(3, 2)}, {"xQ1", q(1)}, {"xQ2", q(-1, 2)},
                  {"w", q(-1, 2)}});
}

TEST_CASE("degree one maps") {
  auto lambda = rt("1/1/1");
  auto rr = projective_line_rr(1);
  auto curve = projective_line_curve();
  auto cases = enumerate_cases(curve, rr, lambda);
  // 2x / (x + 1)
  auto general = build_system(curve, rr, lambda, cases.front());
  check_solution(general, rr,
                 {{"a2", q(2)}, {"b1", q(1)}, {"xP1", q(0)}, {"xQ1", q(1)}, {"xR1", q(-1)}, {"w", q(1, 2)}});
  // the identity map, pole at infinity
  auto c = find_case(cases, lambda, "k=2 l=1 m=1 mu=[] pattern=R1=D01 chart=affine");
  check_solution(build_system(curve, rr, lambda, c), rr, {{"a2", q(1)}, {"xP1", q(0)}, {"xQ1", q(1)}, {"w", q(1)}});
}

TEST_CASE("counts follow the closed form") {
  auto fermat = fermat_quartic_curve();
  auto rr = fermat_quartic_rr(10);
  std::mt19937 rng(41);
  std::vector<RamificationType> types{rt("7/7/7")};
  std::vector<std::pair<RamificationType, SystemCase>> picked;
  for (const auto& lambda : types) {
    auto cases = enumerate_cases(fermat, rr, lambda);
    std::vector<SystemCase> affine;
    for (const auto& c : cases)
      if (c.chart == ChartKind::affine && c.k >= 2 && c.l >= 2) affine.push_back(c);
    std::shuffle(affine.begin(), affine.end(), rng);
    for (std::size_t i = 0; i < 20 && i < affine.size(); ++i) picked.emplace_back(lambda, affine[i]);
  }
  REQUIRE(picked.size() == 20);
  for (const auto& [lambda, c] : picked) {
    auto sys = build_system(fermat, rr, lambda, c);
    std::size_t r0 = lambda.lambda0.length(), r1 = lambda.lambda1.length(), ri = lambda.lambda_inf.length();
    std::size_t s = c.mu.length();
    std::size_t pts = r0 + r1 + ri + s;
    std::size_t free = pts - c.pattern.size();
    std::size_t nodes = free + 1;  // D0 is affine
    std::size_t orders = 0, ident = 0;
    auto pv = c.points(lambda);
    auto nonzero_below = [&](int count, int threshold) {
      std::size_t k = 0;
      for (int i = 0; i < count; ++i)
        if (rr.pole_orders[0][i] < threshold) ++k;
      return k;
    };
    for (std::size_t a = 0; a < pv.size(); ++a) {
      int forms = pv[a].role == PointRole::Y ? 2 : 1;
      bool is_ident = !c.pattern.empty() && c.pattern.front().first == a;
      if (!is_ident) {
        orders += forms * pv[a].order;
        continue;
      }
      int th = pv[a].order - c.m;
      switch (pv[a].role) {
        case PointRole::P: ident += nonzero_below(c.k, th); break;
        case PointRole::Q: ident += nonzero_below(std::max(c.k, c.l), th); break;
        case PointRole::R: ident += nonzero_below(c.l, th); break;
        case PointRole::Y: ident += nonzero_below(c.k, th) + nonzero_below(c.l, th); break;
      }
    }
    std::size_t pairs = nodes * (nodes - 1) / 2;
    INFO(c.describe(lambda));
    CHECK(sys.counts.coefficient_variables == static_cast<std::size_t>(c.k + c.l - 1));
    CHECK(sys.counts.coordinate_variables == 2 * free);
    CHECK(sys.counts.distinctness_variables == pairs);
    CHECK(sys.counts.membership_equations == free);
    CHECK(sys.counts.vanishing_equations == orders);
    CHECK(sys.counts.identification_equations == ident);
    CHECK(sys.counts.distinctness_equations == pairs);
    CHECK(sys.variables.size() == sys.counts.total_variables());
    CHECK(sys.equations.size() == sys.counts.total_equations());
  }
}

TEST_CASE("export is bit-exact and round-trips") {
  auto fermat = fermat_quartic_curve();
  auto rr = fermat_quartic_rr(10);
  auto lambda = rt("7/7/7");
  auto c = enumerate_cases(fermat, rr, lambda).front();
  auto text = export_system(build_system(fermat, rr, lambda, c));
  CHECK(text == export_system(build_system(fermat, rr, lambda, c)));
  auto back = parse_system(text);
  CHECK(back.variables.size() == 34);
  CHECK(back.equations.size() == 42);
  CHECK(export_system(back) == text);

  auto flagged = find_case(enumerate_cases(fermat, rr, lambda), lambda,
                           "k=8 l=8 m=10 mu=[3] pattern=none chart=point_at_infinity(P1)");
  auto fs = build_system(fermat, rr, lambda, flagged);
  REQUIRE(fs.chart_request.has_value());
  CHECK(fs.equations.empty());
  auto fback = parse_system(export_system(fs));
  CHECK(fback.chart_request == fs.chart_request);
  CHECK(solve_system(fback, MonomialOrder::grevlex).verdict == Verdict::unknown);
}

TEST_CASE("build_system rejects inconsistent cases") {
  auto curve = projective_line_curve();
  auto rr = projective_line_rr(2);
  auto lambda = rt("2/1,1/2");
  SystemCase c = enumerate_cases(curve, rr, lambda).front();
  SystemCase bad = c;
  bad.m = 5;
  CHECK_THROWS_AS(build_system(curve, rr, lambda, bad), std::invalid_argument);
  bad = c;
  bad.k = 4;
  CHECK_THROWS_AS(build_system(curve, rr, lambda, bad), std::invalid_argument);
  bad = c;
  bad.pattern = {{9, 0}};
  CHECK_THROWS_AS(build_system(curve, rr, lambda, bad), std::invalid_argument);
}
