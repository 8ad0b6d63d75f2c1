#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/multipoly.hpp"
#include "belyi/passports.hpp"

namespace belyi {

/// Ratio of two bivariate polynomials in (x, y).
struct RationalFunction {
  MultiPoly num, den;

  static RationalFunction polynomial(const MultiPoly& p);
  std::string to_string() const;
};

/// Affine plane model f(x, y) = 0 of a curve.
struct CurveModel {
  std::string name;
  MultiPoly f;  // arity 2
  int genus = 0;
  /// The projective closure has points on z = 0 outside supp(D0).
  bool extra_points_at_infinity = false;

  static CurveModel make(std::string name, MultiPoly f, int genus, bool extra_points_at_infinity);

  MultiPoly slope_numerator() const;    // -f_x
  MultiPoly slope_denominator() const;  // f_y
};

/// A point of the base divisor D0: affine coordinates, or the point at infinity.
struct DivisorPoint {
  std::optional<std::pair<Rational, Rational>> affine;
  int multiplicity = 1;
};

struct RRData {
  std::vector<DivisorPoint> d0;
  int t = 0;
  std::vector<RationalFunction> basis;  // g_1 .. g_n, g_1 = 1
  std::vector<int> tiers;               // minimal m with g_i in H^0(L^m)
  /// pole_orders[j][i] = ord at D0 point j of g_i; empty when unknown.
  std::vector<std::vector<int>> pole_orders;

  int d0_degree() const;
  std::size_t n() const { return basis.size(); }
  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

int compute_t(int d, int g, int d0);
/// t d0 + 1 - g; requires t d0 > 2g - 2.
int expected_rr_dimension(int t, int d0, int g);

/// -f_x / f_y with the common rational content and common monomial removed.
/// Throws ChartFailure when f_y vanishes identically.
RationalFunction implicit_slope(const CurveModel& curve);

struct VanishingEquations {
  std::vector<MultiPoly> conditions;  // j = 0 .. order-1
  MultiPoly membership;               // f(x_Z, y_Z)
};

/// Conditions for sum coeffs[i] * basis[i] to vanish to the given order at
/// (x_Z, y_Z), with x - x_Z as uniformizer. Coefficients and the result live
/// in the same ring; x_var, y_var index the point's coordinates in it.
VanishingEquations vanishing_equations(const std::vector<MultiPoly>& coeffs, const std::vector<RationalFunction>& basis,
                                       std::size_t x_var, std::size_t y_var, int order, const CurveModel& curve);

struct PointCoords {
  std::string name;
  MultiPoly x, y;
};

struct DistinctnessConstraints {
  std::vector<std::string> new_variables;  // appended after the input arity
  std::vector<MultiPoly> equations;
};

/// ((x_A - x_B) z_AB - 1)((y_A - y_B) z_AB - 1) for every pair required
/// distinct; {x_A - x_B, y_A - y_B} for identified pairs. Pairs not named in
/// `distinct` are required distinct unless identified (transitively).
/// Throws std::invalid_argument when an explicitly distinct pair is identified.
DistinctnessConstraints distinctness_constraints(
    const std::vector<PointCoords>& points, const std::vector<std::pair<std::size_t, std::size_t>>& identified = {},
    const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& distinct = std::nullopt);

enum class PointRole { P, Q, R, Y };

struct AuxPoint {
  PointRole role;
  int index = 1;  // 1-based within its role
  int order = 1;  // vanishing order
  std::string name() const;
};

enum class ChartKind { affine, point_at_infinity, vertical_tangent };

struct SystemCase {
  int k = 1, l = 1, m = 0;
  CycleType mu;
  /// (aux point index, D0 point index); at most one entry per aux point.
  std::vector<std::pair<std::size_t, std::size_t>> pattern;
  ChartKind chart = ChartKind::affine;
  std::size_t chart_point = 0;  // aux point index when chart != affine

  std::vector<AuxPoint> points(const RamificationType& lambda) const;
  std::string describe(const RamificationType& lambda) const;
  nlohmann::json to_json(const RamificationType& lambda) const;
};

/// All cases, general case first. Empty when the genus of lambda differs from the curve's.
std::vector<SystemCase> enumerate_cases(const CurveModel& curve, const RRData& rr, const RamificationType& lambda);

struct SystemCounts {
  std::size_t coefficient_variables = 0;
  std::size_t coordinate_variables = 0;
  std::size_t distinctness_variables = 0;
  std::size_t gadget_variables = 0;
  std::size_t membership_equations = 0;
  std::size_t vanishing_equations = 0;
  std::size_t identification_equations = 0;
  std::size_t distinctness_equations = 0;
  std::size_t gadget_equations = 0;

  std::size_t variables_without_gadget() const {
    return coefficient_variables + coordinate_variables + distinctness_variables;
  }
  std::size_t equations_without_gadget() const {
    return membership_equations + vanishing_equations + identification_equations + distinctness_equations;
  }
  std::size_t total_variables() const { return variables_without_gadget() + gadget_variables; }
  std::size_t total_equations() const { return equations_without_gadget() + gadget_equations; }
  nlohmann::json to_json() const;
};

struct PolynomialSystem {
  std::vector<std::string> variables;
  std::vector<MultiPoly> equations;
  std::vector<std::string> comments;
  /// Set for cases outside the affine chart; such systems carry no equations.
  std::optional<std::string> chart_request;
  SystemCounts counts;
  int imposed_vanishing_on_a = 0;

  std::size_t variable_index(const std::string& name) const;
};

PolynomialSystem build_system(const CurveModel& curve, const RRData& rr, const RamificationType& lambda,
                              const SystemCase& c);

}  // namespace belyi
