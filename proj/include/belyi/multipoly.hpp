#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/types.hpp"

namespace belyi {

using Exponent = std::vector<int>;

enum class MonomialOrder { lex, grlex, grevlex };

MonomialOrder parse_monomial_order(std::string_view name);
std::string to_string(MonomialOrder order);

/// Negative, zero or positive as a is smaller than, equal to or larger than b.
int compare_monomials(const Exponent& a, const Exponent& b, MonomialOrder order);

bool divides(const Exponent& a, const Exponent& b);
Exponent monomial_lcm(const Exponent& a, const Exponent& b);

/// Sparse polynomial over Q in a fixed number of variables. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Rational& c);
  static MultiPoly variable(std::size_t arity, std::size_t index);
  static MultiPoly monomial(const Exponent& e, const Rational& c);

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  MultiPoly operator-() const;
  MultiPoly pow(unsigned k) const;

  bool operator==(const MultiPoly& o) const = default;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  /// Variables that occur with positive exponent.
  std::vector<std::size_t> support() const;

  MultiPoly derivative(std::size_t var) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Replaces variable i by images[i]; all images share the result arity.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  /// Re-embeds into new_arity variables, old variable i going to mapping[i].
  MultiPoly embed(std::size_t new_arity, const std::vector<std::size_t>& mapping) const;

  Exponent leading_exponent(MonomialOrder order) const;
  Rational leading_coefficient(MonomialOrder order) const;
  MultiPoly monic(MonomialOrder order) const;

  /// Largest monomial dividing every term.
  Exponent monomial_content() const;
  /// Exact division by a monomial that divides every term.
  MultiPoly divide_monomial(const Exponent& e) const;
  /// Multiplies by the positive lcm of coefficient denominators, then divides by the gcd of numerators.
  MultiPoly primitive_part() const;

  /// Terms in descending order, e.g. "3*x^2*y - 1/2*y + 1". Default names x1..xn.
  std::string to_string(const std::vector<std::string>& names = {},
                        MonomialOrder order = MonomialOrder::grlex) const;

 private:
  std::size_t arity_ = 0;
  TermMap terms_;
};

/// Parses sums of terms like "3/2*x^2*y - x + 1" over the given variable
/// names. Implicit multiplication is not accepted; there are no parentheses.
MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names);

}  // namespace belyi
