#include "belyi/perm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace belyi {

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const BigInt& n) { return n.str(); }

int CycleType::total() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string CycleType::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts[i]);
  }
  return out + "]";
}

CycleType parse_cycle_type(std::string_view text) {
  CycleType ct;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    int v = 0;
    try {
      v = std::stoi(cur);
    } catch (const std::exception&) {
      throw ParseError("bad partition part '" + cur + "'");
    }
    if (v <= 0) throw ParseError("partition parts must be positive");
    ct.parts.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (c == ',' || c == ' ' || c == '+') {
      flush();
    } else if (c == '[' || c == ']' || c == '(' || c == ')') {
      flush();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in partition");
    }
  }
  flush();
  if (ct.parts.empty()) throw ParseError("empty partition");
  std::sort(ct.parts.rbegin(), ct.parts.rend());
  return ct;
}

Permutation::Permutation(std::size_t degree) : img_(degree) {
  if (degree == 0) throw std::invalid_argument("permutation degree must be positive");
  for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<int>(i);
}

Permutation Permutation::from_images(std::span<const int> images) {
  Permutation p(images.size());
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 1 || static_cast<std::size_t>(v) > images.size() || seen[v - 1])
      throw std::invalid_argument("image sequence is not a bijection of {1..d}");
    seen[v - 1] = true;
    p.img_[i] = v - 1;
  }
  return p;
}

Permutation Permutation::from_cycle_list(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (int v : cyc) {
      if (v < 1 || static_cast<std::size_t>(v) > degree)
        throw std::invalid_argument("cycle entry " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]) throw std::invalid_argument("point " + std::to_string(v) + " repeated in cycles");
      used[v - 1] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) p.img_[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
  }
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  std::vector<std::vector<int>> cycles;
  std::vector<int>* open = nullptr;
  std::string num;
  auto flush = [&] {
    if (num.empty()) return;
    if (!open) throw ParseError("number outside parentheses in cycle text");
    open->push_back(std::stoi(num));
    num.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      num += c;
    } else if (c == '(') {
      if (open) throw ParseError("nested '(' in cycle text");
      cycles.emplace_back();
      open = &cycles.back();
    } else if (c == ')') {
      flush();
      if (!open) throw ParseError("unbalanced ')' in cycle text");
      open = nullptr;
    } else if (c == ' ' || c == ',') {
      flush();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in cycle text");
    }
  }
  if (open || !num.empty()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
  try {
    return from_cycle_list(degree, cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<int>(i);
  return r;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == static_cast<int>(i)) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = static_cast<std::size_t>(img_[j]);
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> r(p.degree());
  auto pt = p.table();
  auto qt = q.table();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = pt[qt[i]] + 1;
  return Permutation::from_images(r);
}

CycleType cycle_type(const Permutation& p) {
  CycleType ct;
  auto t = p.table();
  std::vector<bool> seen(t.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(t[j])) {
      seen[j] = true;
      ++len;
    }
    ct.parts.push_back(len);
  }
  std::sort(ct.parts.rbegin(), ct.parts.rend());
  return ct;
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  if (p.degree() != g.degree()) throw std::invalid_argument("conjugate: degree mismatch");
  return compose(compose(g, p), g.inverse());
}

bool is_even(const Permutation& p) {
  auto ct = cycle_type(p);
  int transpositions = 0;
  for (int len : ct.parts) transpositions += len - 1;
  return transpositions % 2 == 0;
}

bool is_transitive(std::span<const Permutation> gens, std::size_t degree) {
  if (degree == 0) return false;
  for (const auto& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("is_transitive: generator degree mismatch");
  std::vector<bool> seen(degree, false);
  std::vector<int> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head];
    for (const auto& g : gens) {
      int y = g.table()[x];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
        ++count;
      }
    }
  }
  return count == degree;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {

std::size_t common_degree(std::span<const Permutation> gens, const char* what) {
  if (gens.empty()) throw std::invalid_argument(std::string(what) + ": empty generator list");
  std::size_t d = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != d) throw std::invalid_argument(std::string(what) + ": generator degree mismatch");
  return d;
}

// Deterministic Schreier-Sims. Level i stabilizes base[0..i-1] pointwise;
// transversal[beta] maps base[i] to beta.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  void build(std::span<const Permutation> gens) {
    std::vector<Permutation> nontrivial;
    for (const auto& g : gens)
      if (!g.is_identity()) nontrivial.push_back(g);
    if (nontrivial.empty()) return;
    push_level(first_moved(nontrivial.front()));
    levels_[0].gens = nontrivial;
    rebuild_orbit(0);

    long i = static_cast<long>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      Level& lv = levels_[i];
      std::vector<int> orbit = lv.orbit;
      std::vector<Permutation> sgens = lv.gens;
      for (int beta : orbit) {
        for (const auto& s : sgens) {
          const Level& cur = levels_[i];
          int image = s.table()[beta];
          Permutation h = compose(cur.transversal[image]->inverse(), compose(s, *cur.transversal[beta]));
          if (h.is_identity()) continue;
          auto [residue, drop] = sift(h, static_cast<std::size_t>(i) + 1);
          if (residue.is_identity()) continue;
          if (drop == levels_.size()) push_level(first_moved(residue));
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= drop; ++l) {
            levels_[l].gens.push_back(residue);
            rebuild_orbit(l);
          }
          i = static_cast<long>(drop);
          restarted = true;
          break;
        }
        if (restarted) break;
      }
      if (!restarted) --i;
    }
  }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& lv : levels_) r *= lv.orbit.size();
    return r;
  }

 private:
  struct Level {
    int base = 0;
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    std::vector<std::optional<Permutation>> transversal;
  };

  static int first_moved(const Permutation& p) {
    auto t = p.table();
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != static_cast<int>(i)) return static_cast<int>(i);
    return 0;
  }

  void push_level(int base) {
    Level lv;
    lv.base = base;
    lv.transversal.assign(degree_, std::nullopt);
    lv.transversal[base] = Permutation(degree_);
    lv.orbit = {base};
    levels_.push_back(std::move(lv));
  }

  void rebuild_orbit(std::size_t idx) {
    Level& lv = levels_[idx];
    lv.transversal.assign(degree_, std::nullopt);
    lv.transversal[lv.base] = Permutation(degree_);
    lv.orbit = {lv.base};
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      int x = lv.orbit[head];
      for (const auto& g : lv.gens) {
        int y = g.table()[x];
        if (!lv.transversal[y]) {
          lv.transversal[y] = compose(g, *lv.transversal[x]);
          lv.orbit.push_back(y);
        }
      }
    }
  }

  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      int beta = h.table()[levels_[l].base];
      if (!levels_[l].transversal[beta]) return {h, l};
      h = compose(levels_[l].transversal[beta]->inverse(), h);
    }
    return {h, levels_.size()};
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

// Orbits of <gens> on {0..d-1}, in order of smallest element.
std::vector<std::vector<int>> orbits(std::span<const Permutation> gens, std::size_t d) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(d, false);
  for (std::size_t s = 0; s < d; ++s) {
    if (seen[s]) continue;
    std::vector<int> orb{static_cast<int>(s)};
    seen[s] = true;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const auto& g : gens) {
        int y = g.table()[orb[head]];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    }
    out.push_back(std::move(orb));
  }
  return out;
}

// Does x -> y extend to a <gens>-equivariant bijection from orbit(x) onto orbit(y)?
bool equivariant_map_exists(std::span<const Permutation> gens, std::size_t d, int x, int y) {
  std::vector<int> phi(d, -1), used(d, 0);
  phi[x] = y;
  used[y] = 1;
  std::vector<int> queue{x};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int a = queue[head];
    for (const auto& g : gens) {
      int ga = g.table()[a];
      int gphi = g.table()[phi[a]];
      if (phi[ga] == -1) {
        if (used[gphi]) return false;
        phi[ga] = gphi;
        used[gphi] = 1;
        queue.push_back(ga);
      } else if (phi[ga] != gphi) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

BigInt group_order(std::span<const Permutation> gens) {
  std::size_t d = common_degree(gens, "group_order");
  if (d > kGroupOrderMaxDegree)
    throw ResourceLimit("group_order: degree " + std::to_string(d) + " exceeds guard " +
                        std::to_string(kGroupOrderMaxDegree));
  StabilizerChain chain(d);
  chain.build(gens);
  return chain.order();
}

// The centralizer of <gens> in S_d is the automorphism group of the G-set
// {1..d}: orbits fall into isomorphism classes, and the order is
// prod over classes of |Aut(orbit)|^k * k!.
BigInt centralizer_order(std::span<const Permutation> gens) {
  std::size_t d = common_degree(gens, "centralizer_order");
  if (d > kCentralizerMaxDegree)
    throw ResourceLimit("centralizer_order: degree " + std::to_string(d) + " exceeds guard " +
                        std::to_string(kCentralizerMaxDegree));
  auto orbs = orbits(gens, d);
  std::vector<bool> classified(orbs.size(), false);
  BigInt total = 1;
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    if (classified[i]) continue;
    classified[i] = true;
    int base = orbs[i].front();
    unsigned copies = 1;
    for (std::size_t j = i + 1; j < orbs.size(); ++j) {
      if (classified[j] || orbs[j].size() != orbs[i].size()) continue;
      bool iso = false;
      for (int y : orbs[j])
        if (equivariant_map_exists(gens, d, base, y)) {
          iso = true;
          break;
        }
      if (iso) {
        classified[j] = true;
        ++copies;
      }
    }
    unsigned self = 0;
    for (int y : orbs[i])
      if (equivariant_map_exists(gens, d, base, y)) ++self;
    total *= boost::multiprecision::pow(BigInt(self), copies) * factorial(copies);
  }
  return total;
}

std::vector<Permutation> group_elements(std::span<const Permutation> gens, std::size_t limit) {
  std::size_t d = common_degree(gens, "group_elements");
  std::set<Permutation> seen{Permutation(d)};
  std::vector<Permutation> queue{Permutation(d)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      Permutation next = compose(g, queue[head]);
      if (seen.insert(next).second) {
        if (seen.size() > limit) throw ResourceLimit("group_elements: more than " + std::to_string(limit) + " elements");
        queue.push_back(next);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace belyi
