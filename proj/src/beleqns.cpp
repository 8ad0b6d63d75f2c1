#include "belyi/beleqns.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace belyi {

namespace mp = boost::multiprecision;

RationalFunction RationalFunction::polynomial(const MultiPoly& p) {
  return {p, MultiPoly::constant(p.arity(), 1)};
}

std::string RationalFunction::to_string() const {
  static const std::vector<std::string> xy{"x", "y"};
  if (den == MultiPoly::constant(den.arity(), 1)) return num.to_string(xy);
  return "(" + num.to_string(xy) + ")/(" + den.to_string(xy) + ")";
}

CurveModel CurveModel::make(std::string name, MultiPoly f, int genus, bool extra_points_at_infinity) {
  if (f.arity() != 2) throw std::invalid_argument("curve model must be bivariate");
  if (f.is_constant()) throw std::invalid_argument("curve model must be nonconstant");
  if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
  return {std::move(name), std::move(f), genus, extra_points_at_infinity};
}

MultiPoly CurveModel::slope_numerator() const { return -f.derivative(0); }
MultiPoly CurveModel::slope_denominator() const { return f.derivative(1); }

int RRData::d0_degree() const {
  int s = 0;
  for (const auto& p : d0) s += p.multiplicity;
  return s;
}

void RRData::validate() const {
  if (d0.empty() || d0_degree() < 1) throw std::invalid_argument("RRData: D0 must have positive degree");
  for (const auto& p : d0)
    if (p.multiplicity < 1) throw std::invalid_argument("RRData: multiplicities must be positive");
  if (basis.empty()) throw std::invalid_argument("RRData: empty basis");
  if (tiers.size() != basis.size()) throw std::invalid_argument("RRData: one tier per basis element");
  const auto& g1 = basis.front();
  if (!(g1.num.is_constant() && g1.den.is_constant() && g1.num == g1.den) || tiers.front() != 0)
    throw std::invalid_argument("RRData: g_1 must be 1 with tier 0");
  for (std::size_t i = 1; i < tiers.size(); ++i)
    if (tiers[i] < tiers[i - 1]) throw std::invalid_argument("RRData: tiers must be weakly increasing");
  for (const auto& g : basis)
    if (g.num.arity() != 2 || g.den.arity() != 2 || g.den.is_zero())
      throw std::invalid_argument("RRData: basis elements must be bivariate with nonzero denominator");
  if (!pole_orders.empty()) {
    if (pole_orders.size() != d0.size()) throw std::invalid_argument("RRData: pole orders per D0 point");
    for (const auto& row : pole_orders)
      if (row.size() != basis.size()) throw std::invalid_argument("RRData: pole order per basis element");
  }
}

int compute_t(int d, int g, int d0) {
  if (d < 1 || g < 0 || d0 < 1) throw std::invalid_argument("compute_t: need d >= 1, g >= 0, d0 >= 1");
  return (d + g + d0 - 1) / d0;
}

int expected_rr_dimension(int t, int d0, int g) {
  if (t < 1 || d0 < 1 || g < 0) throw std::invalid_argument("expected_rr_dimension: bad arguments");
  if (t * d0 <= 2 * g - 2) throw std::invalid_argument("expected_rr_dimension: needs t*d0 > 2g - 2");
  return t * d0 + 1 - g;
}

namespace {

// Positive rational c with p / c having coprime integer coefficients.
Rational content(const MultiPoly& p) {
  BigInt num = 0, den = 1;
  for (const auto& [e, c] : p.terms()) {
    num = mp::gcd(num, mp::abs(mp::numerator(c)));
    BigInt d = mp::denominator(c);
    den = den / mp::gcd(den, d) * d;
  }
  return num == 0 ? Rational(1) : Rational(num, den);
}

bool is_monomial(const MultiPoly& p) { return p.term_count() == 1; }

}  // namespace

RationalFunction implicit_slope(const CurveModel& curve) {
  MultiPoly den = curve.slope_denominator();
  if (den.is_zero()) throw ChartFailure("implicit_slope: df/dy vanishes identically on " + curve.name);
  MultiPoly num = curve.slope_numerator();
  if (num.is_zero()) return {MultiPoly(2), MultiPoly::constant(2, 1)};
  Rational c = content(den);
  if (den.leading_coefficient(MonomialOrder::grlex) < 0) c = -c;
  num *= Rational(1) / c;
  den *= Rational(1) / c;
  Exponent common(2, 0);
  Exponent en = num.monomial_content(), ed = den.monomial_content();
  for (std::size_t v = 0; v < 2; ++v) common[v] = std::min(en[v], ed[v]);
  return {num.divide_monomial(common), den.divide_monomial(common)};
}

VanishingEquations vanishing_equations(const std::vector<MultiPoly>& coeffs, const std::vector<RationalFunction>& basis,
                                       std::size_t x_var, std::size_t y_var, int order, const CurveModel& curve) {
  if (coeffs.empty() || coeffs.size() != basis.size())
    throw std::invalid_argument("vanishing_equations: one coefficient per basis element");
  if (order < 1) throw std::invalid_argument("vanishing_equations: order must be positive");
  const std::size_t r = coeffs.front().arity();
  for (const auto& c : coeffs)
    if (c.arity() != r) throw std::invalid_argument("vanishing_equations: coefficients of different arity");
  if (x_var >= r || y_var >= r) throw std::out_of_range("vanishing_equations: coordinate index out of range");

  // Work in (x, y, ring variables).
  const std::size_t ring = r + 2;
  std::vector<std::size_t> xy_map{0, 1}, coef_map(r);
  std::iota(coef_map.begin(), coef_map.end(), 2);
  auto lift_xy = [&](const MultiPoly& p) { return p.embed(ring, xy_map); };

  for (const auto& g : basis)
    if (g.den.is_zero()) throw ChartFailure("vanishing_equations: basis denominator vanishes identically");

  // Common denominator L with sum g_i = (sum num_i * factor_i) / L: the
  // monomial lcm when every denominator is c * monomial, otherwise the
  // product of the distinct denominators.
  std::vector<MultiPoly> factor(basis.size());
  MultiPoly den_l = MultiPoly::constant(2, 1);
  bool monomial_dens = std::all_of(basis.begin(), basis.end(), [](const auto& g) { return is_monomial(g.den); });
  if (monomial_dens) {
    Exponent l(2, 0);
    for (const auto& g : basis) l = monomial_lcm(l, g.den.terms().begin()->first);
    den_l = MultiPoly::monomial(l, 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& [e, c] = *basis[i].den.terms().begin();
      Exponent q{l[0] - e[0], l[1] - e[1]};
      factor[i] = MultiPoly::monomial(q, Rational(1) / c);
    }
  } else {
    std::vector<MultiPoly> distinct;
    for (const auto& g : basis)
      if (std::find(distinct.begin(), distinct.end(), g.den) == distinct.end()) distinct.push_back(g.den);
    for (const auto& d : distinct) den_l *= d;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      factor[i] = MultiPoly::constant(2, 1);
      for (const auto& d : distinct)
        if (!(d == basis[i].den)) factor[i] *= d;
    }
  }

  MultiPoly h(ring);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    h += coeffs[i].embed(ring, coef_map) * lift_xy(basis[i].num * factor[i]);
  }

  RationalFunction slope = implicit_slope(curve);
  MultiPoly sp = lift_xy(slope.num), sq = lift_xy(slope.den), sl = lift_xy(den_l);
  // Q * D(u) for D = d/dx + (P/Q) d/dy
  auto qd = [&](const MultiPoly& u) { return sq * u.derivative(0) + sp * u.derivative(1); };
  const MultiPoly dq = qd(sq), dl = qd(sl);
  const bool has_l = !sl.is_constant();

  std::vector<MultiPoly> images{MultiPoly::variable(r, x_var), MultiPoly::variable(r, y_var)};
  for (std::size_t i = 0; i < r; ++i) images.push_back(MultiPoly::variable(r, i));

  // Q and L do not vanish at the point in the affine chart, so a common
  // power of their variables can be dropped from each condition.
  Exponent cancel_mask(ring, 0);
  for (const auto* m : {&sq, &sl}) {
    if (!is_monomial(*m)) continue;
    const Exponent& me = m->terms().begin()->first;
    for (std::size_t v = 0; v < 2; ++v)
      if (me[v] > 0) cancel_mask[v] = 1;
  }

  VanishingEquations out;
  MultiPoly cur = h;
  int a = has_l ? 1 : 0, e = 0;  // the current derivative is cur / (L^a Q^e)
  for (int j = 0; j < order; ++j) {
    MultiPoly eq = cur;
    Exponent common = eq.monomial_content();
    for (std::size_t v = 0; v < ring; ++v) common[v] = cancel_mask[v] ? common[v] : 0;
    eq = eq.divide_monomial(common).substitute(images).primitive_part();
    out.conditions.push_back(std::move(eq));
    if (j + 1 == order) break;
    MultiPoly num = qd(cur);
    if (has_l) num = num * sl - Rational(a) * cur * dl;
    if (e == 0) {
      cur = std::move(num);
      e = 1;
    } else {
      cur = sq * num - Rational(e) * cur * dq * (has_l ? sl : MultiPoly::constant(ring, 1));
      e += 2;
    }
    if (has_l) ++a;
  }
  out.membership = lift_xy(curve.f).substitute(images);
  return out;
}

DistinctnessConstraints distinctness_constraints(
    const std::vector<PointCoords>& points, const std::vector<std::pair<std::size_t, std::size_t>>& identified,
    const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& distinct) {
  DistinctnessConstraints out;
  if (points.empty()) return out;
  const std::size_t arity = points.front().x.arity();
  for (const auto& p : points)
    if (p.x.arity() != arity || p.y.arity() != arity)
      throw std::invalid_argument("distinctness_constraints: coordinates of different arity");

  std::vector<std::size_t> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (auto [i, j] : identified) {
    if (i >= points.size() || j >= points.size() || i == j)
      throw std::invalid_argument("distinctness_constraints: bad identified pair");
    parent[find(i)] = find(j);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (distinct) {
    for (auto [i, j] : *distinct) {
      if (i >= points.size() || j >= points.size() || i == j)
        throw std::invalid_argument("distinctness_constraints: bad distinct pair");
      if (find(i) == find(j))
        throw std::invalid_argument("distinctness_constraints: pair " + points[i].name + "," + points[j].name +
                                    " is both identified and required distinct");
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  } else {
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (find(i) != find(j)) pairs.emplace_back(i, j);
  }

  const std::size_t total = arity + pairs.size();
  std::vector<std::size_t> id(arity);
  std::iota(id.begin(), id.end(), 0);
  auto up = [&](const MultiPoly& p) { return p.embed(total, id); };
  for (auto [i, j] : identified) {
    out.equations.push_back(up(points[i].x - points[j].x));
    out.equations.push_back(up(points[i].y - points[j].y));
  }
  MultiPoly one = MultiPoly::constant(total, 1);
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    auto [i, j] = pairs[q];
    out.new_variables.push_back("z" + points[i].name + "_" + points[j].name);
    MultiPoly z = MultiPoly::variable(total, arity + q);
    MultiPoly fx = up(points[i].x - points[j].x) * z - one;
    MultiPoly fy = up(points[i].y - points[j].y) * z - one;
    out.equations.push_back(fx * fy);
  }
  return out;
}

std::string AuxPoint::name() const {
  static const char* letters = "PQRY";
  return std::string(1, letters[static_cast<int>(role)]) + std::to_string(index);
}

std::vector<AuxPoint> SystemCase::points(const RamificationType& lambda) const {
  std::vector<AuxPoint> out;
  auto add = [&](PointRole role, const CycleType& ct) {
    int idx = 1;
    for (int part : ct.parts) out.push_back({role, idx++, part});
  };
  add(PointRole::P, lambda.lambda0);
  add(PointRole::Q, lambda.lambda1);
  add(PointRole::R, lambda.lambda_inf);
  add(PointRole::Y, mu);
  return out;
}

namespace {

std::string d0_name(std::size_t j) { return "D0" + std::to_string(j + 1); }

std::string chart_text(ChartKind kind) {
  switch (kind) {
    case ChartKind::affine:
      return "affine";
    case ChartKind::point_at_infinity:
      return "point_at_infinity";
    case ChartKind::vertical_tangent:
      return "vertical_tangent";
  }
  return "?";
}

}  // namespace

std::string SystemCase::describe(const RamificationType& lambda) const {
  auto pts = points(lambda);
  std::string pat = "none";
  if (!pattern.empty()) {
    pat.clear();
    for (auto [a, j] : pattern) {
      if (!pat.empty()) pat += ",";
      pat += pts.at(a).name() + "=" + d0_name(j);
    }
  }
  std::string s = "k=" + std::to_string(k) + " l=" + std::to_string(l) + " m=" + std::to_string(m) +
                  " mu=" + mu.to_string() + " pattern=" + pat + " chart=" + chart_text(chart);
  if (chart != ChartKind::affine) s += "(" + pts.at(chart_point).name() + ")";
  return s;
}

nlohmann::json SystemCase::to_json(const RamificationType& lambda) const {
  auto pts = points(lambda);
  nlohmann::json pat = nlohmann::json::array();
  for (auto [a, j] : pattern) pat.push_back({{"point", pts.at(a).name()}, {"d0", d0_name(j)}});
  nlohmann::json j{{"k", k}, {"l", l}, {"m", m}, {"mu", mu.parts}, {"pattern", pat}, {"chart", chart_text(chart)}};
  if (chart != ChartKind::affine) j["chartPoint"] = pts.at(chart_point).name();
  return j;
}

std::vector<SystemCase> enumerate_cases(const CurveModel& curve, const RRData& rr, const RamificationType& lambda) {
  std::vector<SystemCase> out;
  auto g = rh_genus(lambda);
  if (!g || *g != curve.genus) return out;
  rr.validate();
  const int n = static_cast<int>(rr.n());
  const int d0 = rr.d0_degree();
  const bool vertical_possible = !curve.slope_denominator().is_constant();
  for (int k = n; k >= 1; --k) {
    for (int l = n; l >= 1; --l) {
      int m = std::max(rr.tiers[k - 1], rr.tiers[l - 1]);
      int excess = m * d0 - lambda.degree;
      if (excess < 0) continue;
      std::vector<CycleType> mus = excess == 0 ? std::vector<CycleType>{CycleType{}} : enumerate_partitions(excess);
      for (const auto& mu : mus) {
        SystemCase base;
        base.k = k;
        base.l = l;
        base.m = m;
        base.mu = mu;
        out.push_back(base);
        std::size_t npts = base.points(lambda).size();
        for (std::size_t a = 0; a < npts; ++a) {
          for (std::size_t j = 0; j < rr.d0.size(); ++j) {
            SystemCase c = base;
            c.pattern = {{a, j}};
            out.push_back(c);
          }
        }
        for (std::size_t a = 0; a < npts; ++a) {
          if (curve.extra_points_at_infinity) {
            SystemCase c = base;
            c.chart = ChartKind::point_at_infinity;
            c.chart_point = a;
            out.push_back(c);
          }
          if (vertical_possible) {
            SystemCase c = base;
            c.chart = ChartKind::vertical_tangent;
            c.chart_point = a;
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

nlohmann::json SystemCounts::to_json() const {
  return {{"variables",
           {{"coefficients", coefficient_variables},
            {"coordinates", coordinate_variables},
            {"distinctness", distinctness_variables},
            {"gadget", gadget_variables},
            {"withoutGadget", variables_without_gadget()},
            {"total", total_variables()}}},
          {"equations",
           {{"membership", membership_equations},
            {"vanishing", vanishing_equations},
            {"identification", identification_equations},
            {"distinctness", distinctness_equations},
            {"gadget", gadget_equations},
            {"withoutGadget", equations_without_gadget()},
            {"total", total_equations()}}}};
}

std::size_t PolynomialSystem::variable_index(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw std::out_of_range("unknown variable " + name);
  return static_cast<std::size_t>(it - variables.begin());
}

PolynomialSystem build_system(const CurveModel& curve, const RRData& rr, const RamificationType& lambda,
                              const SystemCase& c) {
  rr.validate();
  const int n = static_cast<int>(rr.n());
  if (c.k < 1 || c.k > n || c.l < 1 || c.l > n) throw std::invalid_argument("build_system: k, l out of range");
  if (c.m != std::max(rr.tiers[c.k - 1], rr.tiers[c.l - 1]))
    throw std::invalid_argument("build_system: m must be max(tier_k, tier_l)");
  if (c.mu.total() != c.m * rr.d0_degree() - lambda.degree)
    throw std::invalid_argument("build_system: mu must be a partition of m*d0 - d");

  const auto pts = c.points(lambda);
  for (auto [a, j] : c.pattern)
    if (a >= pts.size() || j >= rr.d0.size()) throw std::invalid_argument("build_system: bad coincidence pattern");
  if (c.chart != ChartKind::affine && c.chart_point >= pts.size())
    throw std::invalid_argument("build_system: chart point out of range");

  PolynomialSystem sys;
  sys.comments.push_back("curve " + curve.name + " genus " + std::to_string(curve.genus));
  sys.comments.push_back("type " + lambda.to_string());
  sys.comments.push_back("case " + c.describe(lambda));

  for (const auto& p : pts)
    if (p.role == PointRole::P || p.role == PointRole::Y) sys.imposed_vanishing_on_a += p.order;

  if (c.chart != ChartKind::affine) {
    sys.chart_request = chart_text(c.chart) + " at " + pts.at(c.chart_point).name() +
                        ": needs a chart transformation or a different uniformizer";
    return sys;
  }
  std::map<std::size_t, std::size_t> ident;
  for (auto [a, j] : c.pattern) {
    if (!ident.emplace(a, j).second) throw std::invalid_argument("build_system: point identified twice");
    bool orders_usable = !rr.pole_orders.empty();
    if (orders_usable) {
      auto row = rr.pole_orders[j];
      std::sort(row.begin(), row.end());
      orders_usable = std::adjacent_find(row.begin(), row.end()) == row.end();
    }
    if (!orders_usable) {
      sys.chart_request = "identification " + pts[a].name() + "=" + d0_name(j) +
                          ": pole orders at D0 unknown or not distinct, needs a local expansion";
      return sys;
    }
  }

  // variables
  std::vector<std::string>& vars = sys.variables;
  for (int i = 1; i <= c.k; ++i) vars.push_back("a" + std::to_string(i));
  for (int i = 1; i < c.l; ++i) vars.push_back("b" + std::to_string(i));
  std::vector<std::size_t> coord_index(pts.size(), 0);
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (ident.count(a)) continue;
    coord_index[a] = vars.size();
    vars.push_back("x" + pts[a].name());
    vars.push_back("y" + pts[a].name());
  }
  const std::size_t base = vars.size();
  sys.counts.coefficient_variables = static_cast<std::size_t>(c.k + c.l - 1);
  sys.counts.coordinate_variables = base - sys.counts.coefficient_variables;

  std::vector<MultiPoly> av(n, MultiPoly(base)), bv(n, MultiPoly(base));
  for (int i = 0; i < c.k; ++i) av[i] = MultiPoly::variable(base, i);
  for (int i = 0; i + 1 < c.l; ++i) bv[i] = MultiPoly::variable(base, c.k + i);
  bv[c.l - 1] = MultiPoly::constant(base, 1);
  std::vector<MultiPoly> amb(n);
  for (int i = 0; i < n; ++i) amb[i] = av[i] - bv[i];

  std::vector<MultiPoly> eqs;
  auto push = [&](MultiPoly p, std::size_t& counter) {
    if (p.is_zero()) return;
    eqs.push_back(std::move(p));
    ++counter;
  };
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const AuxPoint& p = pts[a];
    std::vector<const std::vector<MultiPoly>*> forms;
    switch (p.role) {
      case PointRole::P:
        forms = {&av};
        break;
      case PointRole::Q:
        forms = {&amb};
        break;
      case PointRole::R:
        forms = {&bv};
        break;
      case PointRole::Y:
        forms = {&av, &bv};
        break;
    }
    auto it = ident.find(a);
    if (it == ident.end()) {
      bool membership_done = false;
      for (const auto* form : forms) {
        auto ve = vanishing_equations(*form, rr.basis, coord_index[a], coord_index[a] + 1, p.order, curve);
        if (!membership_done) {
          push(ve.membership, sys.counts.membership_equations);
          membership_done = true;
        }
        for (auto& e : ve.conditions) push(std::move(e), sys.counts.vanishing_equations);
      }
    } else {
      // Section vanishing to order o at a D0 point of multiplicity rho means
      // ord(sum c_i g_i) >= o - m rho; pole orders there are distinct.
      std::size_t j = it->second;
      int threshold = p.order - c.m * rr.d0[j].multiplicity;
      for (const auto* form : forms)
        for (int i = 0; i < n; ++i)
          if (rr.pole_orders[j][i] < threshold) push((*form)[i].primitive_part(), sys.counts.identification_equations);
    }
  }

  // distinctness among unidentified points and affine D0 points
  std::vector<PointCoords> nodes;
  std::vector<bool> is_d0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (ident.count(a)) continue;
    nodes.push_back({pts[a].name(), MultiPoly::variable(base, coord_index[a]),
                     MultiPoly::variable(base, coord_index[a] + 1)});
    is_d0.push_back(false);
  }
  for (std::size_t j = 0; j < rr.d0.size(); ++j) {
    if (!rr.d0[j].affine) continue;
    nodes.push_back({d0_name(j), MultiPoly::constant(base, rr.d0[j].affine->first),
                     MultiPoly::constant(base, rr.d0[j].affine->second)});
    is_d0.push_back(true);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (!(is_d0[i] && is_d0[j])) pairs.emplace_back(i, j);
  auto dc = distinctness_constraints(nodes, {}, pairs);
  for (auto& name : dc.new_variables) vars.push_back(name);
  sys.counts.distinctness_variables = dc.new_variables.size();
  vars.push_back("w");
  sys.counts.gadget_variables = 1;

  const std::size_t total = vars.size();
  std::vector<std::size_t> id(base);
  std::iota(id.begin(), id.end(), 0);
  for (auto& e : eqs) sys.equations.push_back(e.embed(total, id));
  std::vector<std::size_t> id2(base + dc.new_variables.size());
  std::iota(id2.begin(), id2.end(), 0);
  for (auto& e : dc.equations) {
    sys.equations.push_back(e.embed(total, id2));
    ++sys.counts.distinctness_equations;
  }
  sys.equations.push_back(MultiPoly::variable(total, total - 1) * MultiPoly::variable(total, c.k - 1) -
                          MultiPoly::constant(total, 1));
  sys.counts.gadget_equations = 1;
  return sys;
}

}  // namespace belyi
