#include "belyi/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

namespace belyi {

BelyiTriple BelyiTriple::from_pair(const Permutation& s0, const Permutation& s1) {
  return BelyiTriple{s0, s1, compose(s0, s1).inverse()};
}

bool BelyiTriple::product_is_identity() const { return compose(sigma0, compose(sigma1, sigma_inf)).is_identity(); }

bool BelyiTriple::is_transitive() const {
  std::vector<Permutation> gens{sigma0, sigma1};
  return belyi::is_transitive(gens, degree());
}

RamificationType BelyiTriple::ramification_type() const {
  return RamificationType(static_cast<int>(degree()), cycle_type(sigma0), cycle_type(sigma1), cycle_type(sigma_inf));
}

nlohmann::json BelyiTriple::to_json() const {
  return {{"sigma0", sigma0.to_cycle_string()},
          {"sigma1", sigma1.to_cycle_string()},
          {"sigmaInf", sigma_inf.to_cycle_string()}};
}

std::string Monodromy::tag() const {
  switch (kind) {
    case MonodromyKind::cyclic:
      return "cyclic";
    case MonodromyKind::alternating:
      return "alternating";
    case MonodromyKind::symmetric:
      return "symmetric";
    case MonodromyKind::other:
      break;
  }
  return "other(" + order.str() + ")";
}

std::size_t PassportEntry::cyclic_count() const {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [](const ClassEntry& c) {
    return c.monodromy.kind == MonodromyKind::cyclic;
  }));
}

nlohmann::json PassportEntry::to_json() const {
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : classes) {
    nlohmann::json j = c.triple.to_json();
    j["monodromyOrder"] = c.monodromy.order.str();
    j["monodromyTag"] = c.monodromy.tag();
    j["automorphismCount"] = c.automorphisms.str();
    cls.push_back(std::move(j));
  }
  return {{"lambda", lambda.to_json()},
          {"type", lambda.to_string()},
          {"genus", genus},
          {"classCount", classes.size()},
          {"cyclicCount", cyclic_count()},
          {"noncyclicCount", classes.size() - cyclic_count()},
          {"classes", std::move(cls)}};
}

Permutation canonical_permutation(const CycleType& type, int degree) {
  if (type.total() != degree) throw std::invalid_argument("canonical_permutation: type does not sum to degree");
  std::vector<int> lengths = type.parts;
  std::sort(lengths.begin(), lengths.end());
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int len : lengths) {
    std::vector<int> cyc;
    for (int k = 0; k < len; ++k) cyc.push_back(next++);
    cycles.push_back(std::move(cyc));
  }
  return Permutation::from_cycle_list(static_cast<std::size_t>(degree), cycles);
}

namespace {

struct CycleInfo {
  std::vector<std::vector<int>> cycles;  // each cycle follows the permutation
  std::vector<int> cycle_of, pos_in;
};

CycleInfo cycle_info(const Permutation& p) {
  CycleInfo info;
  auto t = p.table();
  std::size_t d = t.size();
  info.cycle_of.assign(d, -1);
  info.pos_in.assign(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    if (info.cycle_of[i] != -1) continue;
    std::vector<int> cyc;
    for (int j = static_cast<int>(i); info.cycle_of[j] == -1; j = t[j]) {
      info.cycle_of[j] = static_cast<int>(info.cycles.size());
      info.pos_in[j] = static_cast<int>(cyc.size());
      cyc.push_back(j);
    }
    info.cycles.push_back(std::move(cyc));
  }
  return info;
}

// Relabelling search: g is built cycle by cycle so that g s0 g^-1 = L0 always holds.
class PairCanonicalizer {
 public:
  PairCanonicalizer(const Permutation& s0, const Permutation& s1)
      : d_(s0.degree()), s1_(s1.table().begin(), s1.table().end()) {
    old_ = cycle_info(s0);
    target_ = canonical_permutation(cycle_type(s0), static_cast<int>(d_));
    new_ = cycle_info(target_);
  }

  std::pair<Permutation, Permutation> run() {
    State st;
    st.old_to_new.assign(d_, -1);
    st.new_to_old.assign(d_, -1);
    st.old_used.assign(old_.cycles.size(), 0);
    st.new_used.assign(new_.cycles.size(), 0);
    std::vector<int> cur(d_, 0);
    search(st, 0, cur);
    std::vector<int> imgs(d_);
    for (std::size_t i = 0; i < d_; ++i) imgs[i] = best_[i] + 1;
    return {target_, Permutation::from_images(imgs)};
  }

 private:
  struct State {
    std::vector<int> old_to_new, new_to_old;
    std::vector<char> old_used, new_used;
  };

  // old cycle oc mapped onto new cycle nc with old point at position `shift` landing on the new cycle's first label.
  void assign(State& st, int oc, int nc, int shift) const {
    const auto& ocyc = old_.cycles[oc];
    const auto& ncyc = new_.cycles[nc];
    std::size_t len = ocyc.size();
    for (std::size_t k = 0; k < len; ++k) {
      int o = ocyc[(shift + k) % len];
      int n = ncyc[k];
      st.old_to_new[o] = n;
      st.new_to_old[n] = o;
    }
    st.old_used[oc] = 1;
    st.new_used[nc] = 1;
  }

  // Lexicographic comparison of cur[0..=pos] against best_[0..=pos].
  int compare_prefix(const std::vector<int>& cur, std::size_t pos) const {
    for (std::size_t i = 0; i <= pos; ++i) {
      if (cur[i] < best_[i]) return -1;
      if (cur[i] > best_[i]) return 1;
    }
    return 0;
  }

  void search(State& st, std::size_t pos, std::vector<int>& cur) {
    if (pos == d_) {
      if (!has_best_ || compare_prefix(cur, d_ - 1) < 0) {
        best_ = cur;
        has_best_ = true;
      }
      return;
    }
    int label = static_cast<int>(pos);
    int o = st.new_to_old[label];
    if (o == -1) {
      int nc = new_.cycle_of[label];
      std::size_t len = new_.cycles[nc].size();
      int label_pos = new_.pos_in[label];
      for (std::size_t oc = 0; oc < old_.cycles.size(); ++oc) {
        if (st.old_used[oc] || old_.cycles[oc].size() != len) continue;
        for (std::size_t k = 0; k < len; ++k) {
          // old point at position k of oc lands on `label`
          int shift = static_cast<int>((k + len - static_cast<std::size_t>(label_pos)) % len);
          State next = st;
          assign(next, static_cast<int>(oc), nc, shift);
          search(next, pos, cur);
        }
      }
      return;
    }
    int q = s1_[o];
    if (st.old_to_new[q] == -1) {
      int oc = old_.cycle_of[q];
      std::size_t len = old_.cycles[oc].size();
      int chosen = -1;
      for (std::size_t nc = 0; nc < new_.cycles.size(); ++nc) {
        if (!st.new_used[nc] && new_.cycles[nc].size() == len) {
          chosen = static_cast<int>(nc);
          break;
        }
      }
      assign(st, oc, chosen, old_.pos_in[q]);
    }
    cur[pos] = st.old_to_new[q];
    if (has_best_ && compare_prefix(cur, pos) > 0) return;
    search(st, pos + 1, cur);
  }

  std::size_t d_;
  std::vector<int> s1_;
  CycleInfo old_, new_;
  Permutation target_;
  std::vector<int> best_;
  bool has_best_ = false;
};

}  // namespace

std::pair<Permutation, Permutation> canonical_pair(const Permutation& s0, const Permutation& s1) {
  if (s0.degree() != s1.degree()) throw std::invalid_argument("canonical_pair: degree mismatch");
  return PairCanonicalizer(s0, s1).run();
}

BelyiTriple canonicalize(const BelyiTriple& t) {
  auto [c0, c1] = canonical_pair(t.sigma0, t.sigma1);
  return BelyiTriple::from_pair(c0, c1);
}

namespace {

void class_rec(std::vector<int>& img, std::vector<char>& used, std::map<int, int>& remaining, int d,
               std::vector<Permutation>& out) {
  int e = -1;
  for (int i = 0; i < d; ++i)
    if (!used[i]) {
      e = i;
      break;
    }
  if (e == -1) {
    std::vector<int> one(d);
    for (int i = 0; i < d; ++i) one[i] = img[i] + 1;
    out.push_back(Permutation::from_images(one));
    return;
  }
  for (auto& [len, count] : remaining) {
    if (count == 0) continue;
    --count;
    used[e] = 1;
    std::vector<int> cyc{e};
    // choose the remaining len-1 cycle entries in order
    auto extend = [&](auto&& self) -> void {
      if (static_cast<int>(cyc.size()) == len) {
        for (int k = 0; k < len; ++k) img[cyc[k]] = cyc[(k + 1) % len];
        class_rec(img, used, remaining, d, out);
        return;
      }
      for (int x = e + 1; x < d; ++x) {
        if (used[x]) continue;
        used[x] = 1;
        cyc.push_back(x);
        self(self);
        cyc.pop_back();
        used[x] = 0;
      }
    };
    extend(extend);
    used[e] = 0;
    ++count;
  }
}

}  // namespace

std::vector<Permutation> conjugacy_class(const CycleType& type, int degree) {
  if (type.total() != degree) throw std::invalid_argument("conjugacy_class: type does not sum to degree");
  std::map<int, int> remaining;
  for (int p : type.parts) ++remaining[p];
  std::vector<int> img(degree, 0);
  std::vector<char> used(degree, 0);
  std::vector<Permutation> out;
  class_rec(img, used, remaining, degree, out);
  return out;
}

std::vector<BelyiTriple> enumerate_classes(const RamificationType& lambda, unsigned workers) {
  int d = lambda.degree;
  if (d > kCensusMaxDegree)
    throw ResourceLimit("census: degree " + std::to_string(d) + " exceeds exhaustive guard " +
                        std::to_string(kCensusMaxDegree));
  Permutation s0 = canonical_permutation(lambda.lambda0, d);
  std::vector<Permutation> candidates = conjugacy_class(lambda.lambda1, d);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(candidates.size())));

  auto scan = [&](std::size_t lo, std::size_t hi, std::set<std::vector<int>>& found) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const Permutation& s1 = candidates[idx];
      Permutation prod = compose(s0, s1);
      if (cycle_type(prod) != lambda.lambda_inf) continue;
      std::vector<Permutation> gens{s0, s1};
      if (!is_transitive(gens, static_cast<std::size_t>(d))) continue;
      found.insert(canonical_pair(s0, s1).second.images());
    }
  };

  std::vector<std::set<std::vector<int>>> partial(workers);
  if (workers == 1) {
    scan(0, candidates.size(), partial[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (candidates.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t lo = std::min(candidates.size(), w * chunk);
      std::size_t hi = std::min(candidates.size(), lo + chunk);
      pool.emplace_back(scan, lo, hi, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }
  std::set<std::vector<int>> merged;
  for (auto& s : partial) merged.insert(s.begin(), s.end());

  std::vector<BelyiTriple> out;
  out.reserve(merged.size());
  for (const auto& key : merged) out.push_back(BelyiTriple::from_pair(s0, Permutation::from_images(key)));
  return out;
}

Monodromy classify_monodromy(const BelyiTriple& t) {
  std::vector<Permutation> gens{t.sigma0, t.sigma1};
  Monodromy m;
  m.order = group_order(gens);
  std::size_t d = t.degree();
  if (m.order == d) {
    CycleType full{{static_cast<int>(d)}};
    for (const auto& g : group_elements(gens, d))
      if (cycle_type(g) == full) {
        m.kind = MonodromyKind::cyclic;
        return m;
      }
  }
  BigInt dfact = factorial(static_cast<unsigned>(d));
  if (m.order == dfact) {
    m.kind = MonodromyKind::symmetric;
  } else if (2 * m.order == dfact && is_even(t.sigma0) && is_even(t.sigma1)) {
    m.kind = MonodromyKind::alternating;
  }
  return m;
}

PassportEntry passport_entry(const RamificationType& lambda, unsigned workers) {
  PassportEntry entry;
  entry.lambda = lambda;
  auto g = rh_genus(lambda);
  if (!g) throw std::invalid_argument("passport_entry: " + lambda.to_string() + " has no Riemann-Hurwitz genus");
  entry.genus = *g;
  for (auto& t : enumerate_classes(lambda, workers)) {
    std::vector<Permutation> gens{t.sigma0, t.sigma1};
    ClassEntry c{t, classify_monodromy(t), centralizer_order(gens)};
    entry.classes.push_back(std::move(c));
  }
  return entry;
}

std::vector<PassportEntry> passport_report(int d, int g, unsigned workers) {
  std::vector<PassportEntry> out;
  for (const auto& lambda : types_with_genus(d, g)) out.push_back(passport_entry(lambda, workers));
  return out;
}

bool free_action_obstruction(std::size_t class_count, const BigInt& aut_order, bool all_centralizers_trivial,
                             bool degree_prime) {
  return all_centralizers_trivial && degree_prime && aut_order > class_count;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

unsigned default_worker_count() {
  const char* env = std::getenv("BELYI_WORKERS");
  if (!env) return 1;
  try {
    int v = std::stoi(env);
    return v > 0 ? static_cast<unsigned>(v) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

nlohmann::json Fermat4Certificate::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : steps)
    st.push_back({{"claim", s.claim}, {"operation", s.operation}, {"value", s.value}, {"provenance", s.provenance}});
  nlohmann::json out = {{"curve", "x^4 + y^4 = z^4"},
                        {"lowerBound", lower_bound},
                        {"upperBound", upper_bound},
                        {"noncyclicClasses", noncyclic_classes},
                        {"cyclicClasses", cyclic_classes},
                        {"steps", std::move(st)}};
  if (belyi_degree > 0)
    out["belyiDegree"] = belyi_degree;
  else
    out["belyiDegree"] = nullptr;
  return out;
}

Fermat4Certificate verify_fermat4(unsigned workers) {
  constexpr int kGenus = 3;
  constexpr int kAutOrder = 96;   // Aut(X) = S_3 x| (Z/4)^2
  constexpr int kKnownMapDegree = 8;  // (x:y:z) -> x^2 + z^2 through z^2 = x^4 + 1

  Fermat4Certificate cert;
  cert.lower_bound = lower_bound_from_genus(kGenus);
  cert.steps.push_back({"genus 3 forces Belyi degree >= 7", "lower_bound_from_genus(3)", cert.lower_bound, "computed"});

  cert.upper_bound = kKnownMapDegree;
  cert.steps.push_back({"a Belyi map of degree 8 exists: (x:y:z) -> x^2 + z^2", "declared map", kKnownMapDegree,
                        "input fact: composite through the genus-1 quotient z^2 = x^4 + 1"});

  bool all_degrees_ruled_out = true;
  for (int d = cert.lower_bound; d < cert.upper_bound; ++d) {
    auto types = types_with_genus(d, kGenus);
    nlohmann::json tj = nlohmann::json::array();
    for (const auto& t : types) tj.push_back(t.to_string());
    cert.steps.push_back({"ramification types of degree " + std::to_string(d) + " and genus 3",
                          "types_with_genus(" + std::to_string(d) + ",3)", tj, "computed"});

    for (const auto& lambda : types) {
      PassportEntry entry = passport_entry(lambda, workers);
      std::size_t cyclic = entry.cyclic_count();
      std::size_t noncyclic = entry.class_count() - cyclic;
      cert.cyclic_classes += cyclic;
      cert.noncyclic_classes += noncyclic;

      std::map<std::string, int> by_order;
      bool all_trivial = true;
      for (const auto& c : entry.classes) {
        ++by_order[c.monodromy.order.str()];
        if (c.monodromy.kind != MonodromyKind::cyclic && c.automorphisms != 1) all_trivial = false;
      }
      cert.steps.push_back({"census of " + lambda.to_string(), "enumerate_classes + classify_monodromy",
                            {{"classes", entry.class_count()},
                             {"cyclic", cyclic},
                             {"noncyclic", noncyclic},
                             {"monodromyOrders", by_order}},
                            "computed"});
      cert.steps.push_back({"noncyclic classes have trivial centralizer", "centralizer_order", all_trivial, "computed"});

      bool cyclic_killed = cyclic == 0 || kAutOrder % d != 0;
      cert.steps.push_back({"cyclic maps are Galois of degree " + std::to_string(d) +
                                " and need an automorphism of that order",
                            "aut order divisibility", cyclic_killed,
                            "input fact: #Aut(X) = 96 = 2^5 * 3"});

      bool noncyclic_killed =
          noncyclic == 0 || free_action_obstruction(noncyclic, kAutOrder, all_trivial, is_prime(d));
      cert.steps.push_back({"free Aut(X)-action would give 96 distinct classes, more than exist",
                            "free_action_obstruction(" + std::to_string(noncyclic) + ", 96, " +
                                (all_trivial ? "true" : "false") + ", " + (is_prime(d) ? "true" : "false") + ")",
                            noncyclic_killed, "computed from input fact #Aut(X) = 96"});
      if (!cyclic_killed || !noncyclic_killed) all_degrees_ruled_out = false;
    }
  }
  if (all_degrees_ruled_out) cert.belyi_degree = cert.upper_bound;
  cert.steps.push_back({"Belyi degree", "certificate chain",
                        cert.belyi_degree > 0 ? nlohmann::json(cert.belyi_degree) : nlohmann::json(nullptr),
                        "computed"});
  return cert;
}

}  // namespace belyi
