#include "belyi/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace belyi {

namespace {

struct Term {
  Exponent e;
  Rational c;
};

// Terms sorted by descending monomial.
using Poly = std::vector<Term>;

Poly to_internal(const MultiPoly& p, MonomialOrder order) {
  Poly out;
  out.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) out.push_back({e, c});
  std::sort(out.begin(), out.end(),
            [&](const Term& a, const Term& b) { return compare_monomials(a.e, b.e, order) > 0; });
  return out;
}

MultiPoly to_external(const Poly& p, std::size_t arity) {
  MultiPoly out(arity);
  for (const auto& t : p) out.add_term(t.e, t.c);
  return out;
}

void make_monic(Poly& p) {
  if (p.empty() || p[0].c == 1) return;
  Rational inv = Rational(1) / p[0].c;
  for (auto& t : p) t.c *= inv;
}

// p[start..] - c * x^m * g
Poly sub_mul(const Poly& p, std::size_t start, const Rational& c, const Exponent& m, const Poly& g,
             MonomialOrder order) {
  Poly out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start, j = 0;
  Exponent shifted(m.size());
  auto shift = [&](const Exponent& e) {
    for (std::size_t k = 0; k < m.size(); ++k) shifted[k] = e[k] + m[k];
  };
  if (j < g.size()) shift(g[j].e);
  while (i < p.size() || j < g.size()) {
    int cmp;
    if (i == p.size())
      cmp = -1;
    else if (j == g.size())
      cmp = 1;
    else
      cmp = compare_monomials(p[i].e, shifted, order);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({shifted, -c * g[j].c});
      if (++j < g.size()) shift(g[j].e);
    } else {
      Rational v = p[i].c - c * g[j].c;
      if (v != 0) out.push_back({p[i].e, std::move(v)});
      ++i;
      if (++j < g.size()) shift(g[j].e);
    }
  }
  return out;
}

Exponent quotient(const Exponent& a, const Exponent& b) {
  Exponent q(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) q[k] = a[k] - b[k];
  return q;
}

// Basis elements must be monic.
Poly normal_form(Poly p, const std::vector<const Poly*>& basis, MonomialOrder order) {
  Poly rem;
  std::size_t start = 0;
  while (start < p.size()) {
    const Term& lt = p[start];
    const Poly* divisor = nullptr;
    for (const Poly* g : basis) {
      if (divides((*g)[0].e, lt.e)) {
        divisor = g;
        break;
      }
    }
    if (divisor) {
      Exponent m = quotient(lt.e, (*divisor)[0].e);
      Rational c = lt.c;
      p = sub_mul(p, start, c, m, *divisor, order);
      start = 0;
    } else {
      rem.push_back(p[start]);
      ++start;
    }
  }
  return rem;
}

Poly spoly(const Poly& f, const Poly& g, MonomialOrder order) {
  Exponent l = monomial_lcm(f[0].e, g[0].e);
  Poly a = sub_mul(Poly{}, 0, Rational(-1) / f[0].c, quotient(l, f[0].e), f, order);
  return sub_mul(a, 0, Rational(1) / g[0].c, quotient(l, g[0].e), g, order);
}

int degree_of(const Poly& p) {
  int d = 0;
  for (const auto& t : p) d = std::max(d, std::accumulate(t.e.begin(), t.e.end(), 0));
  return d;
}

bool is_const(const Poly& p) {
  return p.size() == 1 && std::all_of(p[0].e.begin(), p[0].e.end(), [](int x) { return x == 0; });
}

std::size_t common_arity(const std::vector<MultiPoly>& ps, std::size_t fallback) {
  for (const auto& p : ps)
    if (p.arity() != ps.front().arity()) throw std::invalid_argument("polynomials of different arity");
  return ps.empty() ? fallback : ps.front().arity();
}

std::vector<Poly> interreduce(std::vector<Poly> g, MonomialOrder order) {
  std::sort(g.begin(), g.end(),
            [&](const Poly& a, const Poly& b) { return compare_monomials(a[0].e, b[0].e, order) < 0; });
  std::vector<Poly> minimal;
  for (const auto& p : g) {
    bool redundant = false;
    for (const auto& q : minimal)
      if (divides(q[0].e, p[0].e)) redundant = true;
    if (!redundant) minimal.push_back(p);
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Poly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    // the leading term survives since no other leading term divides it
    Poly head{minimal[i][0]};
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    Poly r = normal_form(std::move(tail), others, order);
    head.insert(head.end(), r.begin(), r.end());
    make_monic(head);
    out.push_back(std::move(head));
  }
  return out;
}

}  // namespace

nlohmann::json GroebnerStats::to_json() const {
  return {{"steps", steps},
          {"pairsCreated", pairs_created},
          {"productCriterionSkips", product_criterion_skips},
          {"chainCriterionSkips", chain_criterion_skips},
          {"zeroReductions", zero_reductions},
          {"pendingPairs", pending_pairs},
          {"basisSize", basis_size},
          {"maxDegreeSeen", max_degree_seen}};
}

bool GroebnerResult::is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }

MultiPoly reduce(const MultiPoly& p, const std::vector<MultiPoly>& basis, MonomialOrder order) {
  for (const auto& g : basis)
    if (g.arity() != p.arity()) throw std::invalid_argument("reduce: arity mismatch");
  std::vector<Poly> internal;
  for (const auto& g : basis) {
    if (g.is_zero()) continue;
    internal.push_back(to_internal(g, order));
    make_monic(internal.back());
  }
  std::vector<const Poly*> ptrs;
  for (const auto& g : internal) ptrs.push_back(&g);
  return to_external(normal_form(to_internal(p, order), ptrs, order), p.arity());
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, MonomialOrder order) {
  if (f.arity() != g.arity()) throw std::invalid_argument("s_polynomial: arity mismatch");
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("s_polynomial: zero argument");
  return to_external(spoly(to_internal(f, order), to_internal(g, order), order), f.arity());
}

GroebnerResult buchberger(const std::vector<MultiPoly>& gens, MonomialOrder order, const GroebnerLimits& limits) {
  if (gens.empty()) throw std::invalid_argument("buchberger: no generators");
  std::size_t arity = common_arity(gens, 0);
  GroebnerResult result;
  GroebnerStats& st = result.stats;

  std::vector<Poly> g;
  for (const auto& p : gens) {
    if (p.is_zero()) continue;
    g.push_back(to_internal(p, order));
    make_monic(g.back());
  }
  auto finish_unit = [&] {
    result.status = GroebnerStatus::complete;
    result.basis = {MultiPoly::constant(arity, 1)};
    st.basis_size = 1;
    st.pending_pairs = 0;
    return result;
  };
  if (g.empty()) {
    result.basis = {};
    return result;
  }
  for (const auto& p : g)
    if (is_const(p)) return finish_unit();

  struct Pair {
    Exponent lcm;
    std::size_t i, j;
  };
  auto pair_less = [order](const Pair& a, const Pair& b) {
    int c = compare_monomials(a.lcm, b.lcm, order);
    if (c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs_for = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      queue.insert(Pair{monomial_lcm(g[k][0].e, g[n][0].e), k, n});
      pending.insert({k, n});
      ++st.pairs_created;
    }
  };
  for (std::size_t n = 1; n < g.size(); ++n) add_pairs_for(n);
  for (const auto& p : g) st.max_degree_seen = std::max(st.max_degree_seen, degree_of(p));

  auto limit = [&](std::string reason) {
    result.status = GroebnerStatus::limit_exceeded;
    result.limit_reason = std::move(reason);
    st.pending_pairs = queue.size();
    st.basis_size = g.size();
    for (const auto& p : g) result.basis.push_back(to_external(p, arity));
    return result;
  };

  while (!queue.empty()) {
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({pr.i, pr.j});

    const Exponent& li = g[pr.i][0].e;
    const Exponent& lj = g[pr.j][0].e;
    bool coprime = true;
    for (std::size_t k = 0; k < arity; ++k)
      if (li[k] && lj[k]) coprime = false;
    if (coprime) {
      ++st.product_criterion_skips;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(g[k][0].e, pr.lcm)) continue;
      if (pending.count(std::minmax(k, pr.i)) || pending.count(std::minmax(k, pr.j))) continue;
      chain = true;
    }
    if (chain) {
      ++st.chain_criterion_skips;
      continue;
    }

    if (st.steps >= limits.max_steps) return limit("step limit " + std::to_string(limits.max_steps) + " reached");
    ++st.steps;
    std::vector<const Poly*> ptrs;
    for (const auto& p : g) ptrs.push_back(&p);
    Poly h = normal_form(spoly(g[pr.i], g[pr.j], order), ptrs, order);
    if (h.empty()) {
      ++st.zero_reductions;
      continue;
    }
    make_monic(h);
    if (is_const(h)) return finish_unit();
    int deg = degree_of(h);
    st.max_degree_seen = std::max(st.max_degree_seen, deg);
    if (deg > limits.max_degree)
      return limit("degree limit " + std::to_string(limits.max_degree) + " exceeded (" + std::to_string(deg) + ")");
    if (g.size() >= limits.max_basis_size)
      return limit("basis size limit " + std::to_string(limits.max_basis_size) + " reached");
    g.push_back(std::move(h));
    add_pairs_for(g.size() - 1);
  }

  for (const auto& p : interreduce(std::move(g), order)) result.basis.push_back(to_external(p, arity));
  st.basis_size = result.basis.size();
  st.pending_pairs = 0;
  return result;
}

bool is_groebner_basis(const std::vector<MultiPoly>& basis, MonomialOrder order) {
  std::vector<Poly> g;
  for (const auto& p : basis) {
    if (p.is_zero()) continue;
    g.push_back(to_internal(p, order));
    make_monic(g.back());
  }
  std::vector<const Poly*> ptrs;
  for (const auto& p : g) ptrs.push_back(&p);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!normal_form(spoly(g[i], g[j], order), ptrs, order).empty()) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::empty:
      return "empty";
    case Verdict::nonempty:
      return "nonempty";
    case Verdict::unknown:
      return "unknown";
  }
  return "?";
}

EmptinessResult is_empty_variety(const std::vector<MultiPoly>& equations, MonomialOrder order,
                                 const GroebnerLimits& limits) {
  EmptinessResult out;
  bool all_zero = std::all_of(equations.begin(), equations.end(), [](const MultiPoly& p) { return p.is_zero(); });
  if (all_zero) {
    out.verdict = Verdict::nonempty;
    out.reason = "no nonzero equations";
    return out;
  }
  out.groebner = buchberger(equations, order, limits);
  if (!out.groebner.complete()) {
    out.verdict = Verdict::unknown;
    out.reason = out.groebner.limit_reason;
  } else if (out.groebner.is_unit()) {
    out.verdict = Verdict::empty;
    out.reason = "reduced Groebner basis is {1}";
  } else {
    out.verdict = Verdict::nonempty;
    out.reason = "reduced Groebner basis is not {1}";
  }
  return out;
}

}  // namespace belyi
