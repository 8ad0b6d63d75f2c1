#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/passports.hpp"
#include "belyi/perm.hpp"

namespace belyi {

inline constexpr int kCensusMaxDegree = 9;

/// (sigma0, sigma1, sigmaInf) with sigma0 sigma1 sigmaInf = 1.
struct BelyiTriple {
  Permutation sigma0, sigma1, sigma_inf;

  /// Completes a pair with sigmaInf = (sigma0 sigma1)^-1.
  static BelyiTriple from_pair(const Permutation& s0, const Permutation& s1);

  std::size_t degree() const { return sigma0.degree(); }
  bool product_is_identity() const;
  bool is_transitive() const;
  RamificationType ramification_type() const;
  nlohmann::json to_json() const;

  auto operator<=>(const BelyiTriple&) const = default;
};

enum class MonodromyKind { cyclic, alternating, symmetric, other };

struct Monodromy {
  MonodromyKind kind = MonodromyKind::other;
  BigInt order = 1;

  /// "cyclic", "alternating", "symmetric" or "other(168)".
  std::string tag() const;
};

struct ClassEntry {
  BelyiTriple triple;
  Monodromy monodromy;
  BigInt automorphisms;  // order of the centralizer of <sigma0, sigma1>
};

struct PassportEntry {
  RamificationType lambda;
  int genus = 0;
  std::vector<ClassEntry> classes;

  std::size_t class_count() const { return classes.size(); }
  std::size_t cyclic_count() const;
  nlohmann::json to_json() const;
};

/// Lex-minimal image sequence among permutations of this cycle type:
/// cycles in ascending length on consecutive labels.
Permutation canonical_permutation(const CycleType& type, int degree);

/// Lex-minimal simultaneous conjugate of (sigma0, sigma1), comparing the
/// concatenated 1-based image sequences. Branches only where the relabelling
/// is not forced by the cycle structure of sigma0.
std::pair<Permutation, Permutation> canonical_pair(const Permutation& s0, const Permutation& s1);
BelyiTriple canonicalize(const BelyiTriple& t);

/// Every permutation of the given cycle type, each exactly once.
std::vector<Permutation> conjugacy_class(const CycleType& type, int degree);

/// One canonical representative per simultaneous-conjugation class of
/// transitive triples with cycle types lambda, sorted. Throws ResourceLimit for d > 9.
std::vector<BelyiTriple> enumerate_classes(const RamificationType& lambda, unsigned workers = 1);

Monodromy classify_monodromy(const BelyiTriple& t);

/// Full census for every type in types_with_genus(d, g).
std::vector<PassportEntry> passport_report(int d, int g, unsigned workers = 1);
PassportEntry passport_entry(const RamificationType& lambda, unsigned workers = 1);

/// True when a Belyi map of prime degree on a curve whose automorphisms act
/// freely on its Belyi maps would produce more classes than exist.
bool free_action_obstruction(std::size_t class_count, const BigInt& aut_order, bool all_centralizers_trivial,
                             bool degree_prime);

struct CertificateStep {
  std::string claim;
  std::string operation;
  nlohmann::json value;
  std::string provenance;  // "computed" or "input fact: ..."
};

struct Fermat4Certificate {
  int lower_bound = 0;
  int upper_bound = 0;
  int belyi_degree = 0;  // 0 when the chain does not close
  std::size_t noncyclic_classes = 0;
  std::size_t cyclic_classes = 0;
  std::vector<CertificateStep> steps;

  nlohmann::json to_json() const;
};

/// Replays the degree-8 certificate for x^4 + y^4 = z^4.
Fermat4Certificate verify_fermat4(unsigned workers = 1);

/// Worker count from BELYI_WORKERS, defaulting to 1.
unsigned default_worker_count();

bool is_prime(int n);

}  // namespace belyi
