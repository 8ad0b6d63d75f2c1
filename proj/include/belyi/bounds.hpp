#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/types.hpp"

namespace belyi {

/// A point of P^1(Qbar): a rational p/q, an algebraic number given by its
/// primitive integer minimal polynomial, or infinity.
class AlgebraicPoint {
 public:
  struct RationalValue {
    BigInt num, den;
  };
  struct MinimalPolynomial {
    std::vector<BigInt> coeffs;  // ascending powers
  };
  struct Infinity {};

  /// p/q reduced to lowest terms with q > 0.
  static AlgebraicPoint rational(BigInt p, BigInt q = 1);
  /// Throws std::invalid_argument unless primitive with positive leading coefficient and degree >= 1.
  /// Irreducibility over Q is the caller's responsibility.
  static AlgebraicPoint algebraic(std::vector<BigInt> coeffs_ascending);
  static AlgebraicPoint infinity();

  bool is_rational() const { return std::holds_alternative<RationalValue>(value_); }
  bool is_algebraic() const { return std::holds_alternative<MinimalPolynomial>(value_); }
  bool is_infinity() const { return std::holds_alternative<Infinity>(value_); }

  const RationalValue& as_rational() const { return std::get<RationalValue>(value_); }
  const MinimalPolynomial& as_algebraic() const { return std::get<MinimalPolynomial>(value_); }

  /// Size of the Galois orbit this point contributes: the minimal polynomial's degree, else 1.
  int orbit_size() const;
  std::string to_string() const;

 private:
  std::variant<RationalValue, MinimalPolynomial, Infinity> value_;
};

/// "0", "-3/2", "oo" / "inf".
AlgebraicPoint parse_point(std::string_view text);
/// Integer univariate polynomial in x, e.g. "x^2-2", "3*x^3 - x + 5". Ascending coefficients.
std::vector<BigInt> parse_integer_polynomial(std::string_view text);
std::string format_integer_polynomial(const std::vector<BigInt>& coeffs);

/// Exponential height. Exact when the point is rational or infinite.
struct HeightValue {
  std::optional<BigInt> exact;
  Real value = 1;
  Real error = 0;  // absolute error bound on value

  nlohmann::json to_json() const;
};

HeightValue height(const AlgebraicPoint& pt);

/// Mahler measure |a_n| prod max(1, |root|) of an integer polynomial, from
/// certified root enclosures. Writes an absolute error bound to *error.
Real mahler_measure(const std::vector<BigInt>& coeffs_ascending, Real* error = nullptr);

struct BranchSet {
  std::vector<AlgebraicPoint> points;
  int orbit_size = 0;  // N_B
  HeightValue height;  // H_B
  bool counts_infinity = false;

  nlohmann::json to_json() const;
};

/// N_B is the sum of orbit sizes (infinity counted once) unless overridden.
BranchSet make_branch_set(std::vector<AlgebraicPoint> points, std::optional<int> orbit_size_override = std::nullopt);

/// Either an exact integer or only its base-10 logarithm.
struct BoundValue {
  Rational exponent;  // 9 N^3 2^(N-2) N!
  std::optional<BigInt> exact;
  Real log10;

  /// Decimal digits when exact and short, otherwise "10^<log10>".
  std::string to_string() const;
  nlohmann::json to_json() const;
};

inline constexpr double kExactBoundMaxDigits = 1e6;

/// Rational exponent 9 N^3 2^(N-2) N! (equal to 9/2 for N = 1).
Rational khadjavi_exponent(int n);

/// (4 N H)^(9 N^3 2^(N-2) N!).
BoundValue khadjavi_bound(int n, const HeightValue& h);

/// deg(pi) times the Khadjavi bound of the branch set.
BoundValue belyi_upper_bound(int deg_pi, const BranchSet& branch);

}  // namespace belyi
