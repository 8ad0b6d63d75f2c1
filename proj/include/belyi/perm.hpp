#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/types.hpp"

namespace belyi {

/// Weakly decreasing list of positive parts. Doubles as an integer partition.
struct CycleType {
  std::vector<int> parts;

  int total() const;
  std::size_t length() const { return parts.size(); }
  /// "[3,2,2]"
  std::string to_string() const;

  auto operator<=>(const CycleType&) const = default;
};

/// Parses "3,2,2" (bare) or "[3,2,2]". Parts are sorted into weakly decreasing order.
CycleType parse_cycle_type(std::string_view text);

/// A bijection of {1..d}. Stored 0-based; every public accessor is 1-based.
class Permutation {
 public:
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree = 1);

  /// images[i-1] = p(i), values in 1..d.
  static Permutation from_images(std::span<const int> images);
  /// Disjoint-cycle text such as "(1 2 3)(4 5)", "()" for the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text);
  /// Cycles given as lists of 1-based points.
  static Permutation from_cycle_list(std::size_t degree, const std::vector<std::vector<int>>& cycles);

  std::size_t degree() const { return img_.size(); }
  int operator()(int point) const { return img_[point - 1] + 1; }
  /// 0-based image table.
  std::span<const int> table() const { return img_; }
  /// 1-based image sequence.
  std::vector<int> images() const;

  bool is_identity() const;
  Permutation inverse() const;
  /// Disjoint-cycle text, fixed points omitted, "()" for the identity.
  std::string to_cycle_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> img_;
};

/// r(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);
CycleType cycle_type(const Permutation& p);
/// g p g^-1
Permutation conjugate(const Permutation& p, const Permutation& g);
bool is_even(const Permutation& p);

/// True iff the orbit of 1 under <gens> is all of {1..d}.
bool is_transitive(std::span<const Permutation> gens, std::size_t degree);

inline constexpr std::size_t kGroupOrderMaxDegree = 16;
inline constexpr std::size_t kCentralizerMaxDegree = 12;

/// Order of <gens> via a Schreier-Sims stabilizer chain. Throws ResourceLimit for degree > 16.
BigInt group_order(std::span<const Permutation> gens);

/// Order of the subgroup of S_d commuting with every generator. Throws ResourceLimit for degree > 12.
BigInt centralizer_order(std::span<const Permutation> gens);

/// All elements of <gens>; intended for small groups only.
std::vector<Permutation> group_elements(std::span<const Permutation> gens, std::size_t limit);

BigInt factorial(unsigned n);

}  // namespace belyi
