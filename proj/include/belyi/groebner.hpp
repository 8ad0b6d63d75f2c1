#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/multipoly.hpp"

namespace belyi {

struct GroebnerLimits {
  std::size_t max_steps = 20000;       // S-polynomial reductions
  std::size_t max_basis_size = 2000;
  int max_degree = 64;                 // total degree of any new basis element
};

struct GroebnerStats {
  std::size_t steps = 0;
  std::size_t pairs_created = 0;
  std::size_t product_criterion_skips = 0;
  std::size_t chain_criterion_skips = 0;
  std::size_t zero_reductions = 0;
  std::size_t pending_pairs = 0;
  std::size_t basis_size = 0;
  int max_degree_seen = 0;

  nlohmann::json to_json() const;
};

enum class GroebnerStatus { complete, limit_exceeded };

struct GroebnerResult {
  GroebnerStatus status = GroebnerStatus::complete;
  /// Reduced, monic, sorted by ascending leading monomial when complete;
  /// the partial basis otherwise.
  std::vector<MultiPoly> basis;
  GroebnerStats stats;
  std::string limit_reason;

  bool complete() const { return status == GroebnerStatus::complete; }
  bool is_unit() const;
};

/// Full normal form of p modulo basis: no term of the result is divisible by
/// a leading term of the basis.
MultiPoly reduce(const MultiPoly& p, const std::vector<MultiPoly>& basis, MonomialOrder order);

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, MonomialOrder order);

/// Buchberger with the normal selection strategy (smallest lcm first, ties by
/// pair index), product and chain criteria. Deterministic.
GroebnerResult buchberger(const std::vector<MultiPoly>& gens, MonomialOrder order,
                          const GroebnerLimits& limits = {});

/// Checks that every pairwise S-polynomial reduces to zero.
bool is_groebner_basis(const std::vector<MultiPoly>& basis, MonomialOrder order);

enum class Verdict { empty, nonempty, unknown };
std::string to_string(Verdict v);

struct EmptinessResult {
  Verdict verdict = Verdict::unknown;
  GroebnerResult groebner;
  std::string reason;
};

/// Empty iff the reduced basis is {1}. Unknown when limits trip.
EmptinessResult is_empty_variety(const std::vector<MultiPoly>& equations, MonomialOrder order,
                                 const GroebnerLimits& limits = {});

}  // namespace belyi
