#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/perm.hpp"

namespace belyi {

inline constexpr int kPartitionMaxDegree = 40;

/// A triple of partitions of d: the cycle types over 0, 1 and infinity.
struct RamificationType {
  int degree = 1;
  CycleType lambda0, lambda1, lambda_inf;

  RamificationType() = default;
  /// Throws std::invalid_argument unless every partition sums to degree.
  RamificationType(int degree, CycleType l0, CycleType l1, CycleType linf);

  int r0() const { return static_cast<int>(lambda0.length()); }
  int r1() const { return static_cast<int>(lambda1.length()); }
  int r_inf() const { return static_cast<int>(lambda_inf.length()); }

  /// "7: [7][7][7]"
  std::string to_string() const;
  /// [[7],[7],[7]]
  nlohmann::json to_json() const;

  auto operator<=>(const RamificationType&) const = default;
};

/// Parses "7/7/7" or "2,1/2,1/3". The degree is inferred when not given.
RamificationType parse_ramification_type(std::string_view text, std::optional<int> degree = std::nullopt);

/// All partitions of d in reverse-lexicographic order. Throws ResourceLimit for d > 40.
std::vector<CycleType> enumerate_partitions(int d);

/// g with 2g - 2 = d - r0 - r1 - r_inf, or nullopt when no genus fits.
std::optional<int> rh_genus(const RamificationType& lambda);

/// Every type of degree d whose Riemann-Hurwitz genus is g, ordered by
/// (lambda0, lambda1, lambda_inf) in partition order.
std::vector<RamificationType> types_with_genus(int d, int g);

/// 2g + 1: no Belyi map on a genus-g curve has smaller degree.
int lower_bound_from_genus(int g);

enum class CurveFamily { fermat, cyclic_superelliptic };

CurveFamily parse_curve_family(std::string_view name);

/// Known Belyi degree upper bounds: Fermat x^n + y^n = z^n maps with degree n^2;
/// y^2 - y = x^d (d odd) has the Belyi map y of degree d.
int family_upper_bound(CurveFamily family, int param);

}  // namespace belyi
