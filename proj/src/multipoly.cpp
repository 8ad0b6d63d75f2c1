#include "belyi/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>

namespace belyi {

namespace mp = boost::multiprecision;

MonomialOrder parse_monomial_order(std::string_view name) {
  if (name == "lex") return MonomialOrder::lex;
  if (name == "grlex" || name == "deglex") return MonomialOrder::grlex;
  if (name == "grevlex" || name == "degrevlex") return MonomialOrder::grevlex;
  throw ParseError("unknown monomial order '" + std::string(name) + "'");
}

std::string to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::lex:
      return "lex";
    case MonomialOrder::grlex:
      return "grlex";
    case MonomialOrder::grevlex:
      return "grevlex";
  }
  return "?";
}

int compare_monomials(const Exponent& a, const Exponent& b, MonomialOrder order) {
  if (order != MonomialOrder::lex) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db ? -1 : 1;
  }
  if (order == MonomialOrder::grevlex) {
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent monomial_lcm(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::out_of_range("MultiPoly::variable: index out of range");
  Exponent e(arity, 0);
  e[index] = 1;
  return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rational& c) {
  MultiPoly p(e.size());
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != arity_) throw std::invalid_argument("MultiPoly: exponent length does not match arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void check_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity())
    throw std::invalid_argument("MultiPoly: arity mismatch (" + std::to_string(a.arity()) + " vs " +
                                std::to_string(b.arity()) + ")");
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly out(a.arity());
  Exponent e(a.arity());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(arity_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

int MultiPoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  return best;
}

int MultiPoly::degree_in(std::size_t var) const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e.at(var));
  return best;
}

std::vector<std::size_t> MultiPoly::support() const {
  std::vector<bool> seen(arity_, false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i] > 0) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < arity_; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  if (var >= arity_) throw std::out_of_range("MultiPoly::derivative: variable out of range");
  MultiPoly out(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != arity_) throw std::invalid_argument("MultiPoly::evaluate: point has wrong dimension");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < arity_; ++i)
      for (int k = 0; k < e[i]; ++k) v *= point[i];
    total += v;
  }
  return total;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != arity_) throw std::invalid_argument("MultiPoly::substitute: need one image per variable");
  std::size_t target = images.empty() ? 0 : images[0].arity();
  for (const auto& im : images)
    if (im.arity() != target) throw std::invalid_argument("MultiPoly::substitute: images of different arity");
  // cache powers per variable
  std::vector<std::vector<MultiPoly>> powers(arity_);
  auto power_of = [&](std::size_t var, int k) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  MultiPoly out(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(target, c);
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i]) term *= power_of(i, e[i]);
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::embed(std::size_t new_arity, const std::vector<std::size_t>& mapping) const {
  if (mapping.size() != arity_) throw std::invalid_argument("MultiPoly::embed: mapping size mismatch");
  MultiPoly out(new_arity);
  for (const auto& [e, c] : terms_) {
    Exponent f(new_arity, 0);
    for (std::size_t i = 0; i < arity_; ++i) f.at(mapping[i]) += e[i];
    out.add_term(f, c);
  }
  return out;
}

Exponent MultiPoly::leading_exponent(MonomialOrder order) const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  const Exponent* best = nullptr;
  for (const auto& [e, c] : terms_)
    if (!best || compare_monomials(e, *best, order) > 0) best = &e;
  return *best;
}

Rational MultiPoly::leading_coefficient(MonomialOrder order) const {
  return terms_.at(leading_exponent(order));
}

MultiPoly MultiPoly::monic(MonomialOrder order) const {
  if (terms_.empty()) return *this;
  return *this * (Rational(1) / leading_coefficient(order));
}

Exponent MultiPoly::monomial_content() const {
  if (terms_.empty()) return Exponent(arity_, 0);
  Exponent g = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < arity_; ++i) g[i] = std::min(g[i], e[i]);
  return g;
}

MultiPoly MultiPoly::divide_monomial(const Exponent& m) const {
  MultiPoly out(arity_);
  for (const auto& [e, c] : terms_) {
    if (!divides(m, e)) throw std::domain_error("MultiPoly::divide_monomial: not divisible");
    Exponent q = e;
    for (std::size_t i = 0; i < arity_; ++i) q[i] -= m[i];
    out.add_term(q, c);
  }
  return out;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  BigInt den = 1, num = 0;
  for (const auto& [e, c] : terms_) {
    BigInt d = mp::denominator(c);
    den = den / mp::gcd(den, d) * d;
    num = mp::gcd(num, mp::abs(mp::numerator(c)));
  }
  return *this * Rational(den, num);
}

std::string MultiPoly::to_string(const std::vector<std::string>& names, MonomialOrder order) const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](auto* a, auto* b) { return compare_monomials(a->first, b->first, order) > 0; });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : sorted) {
    const auto& [e, c] = *t;
    Rational mag = mp::abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    bool wrote = false;
    if (!has_var || mag != 1) {
      os << mag.str();
      wrote = true;
    }
    for (std::size_t i = 0; i < arity_; ++i) {
      if (!e[i]) continue;
      if (wrote) os << '*';
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace belyi

namespace belyi {

MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  MultiPoly out(names.size());
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("polynomial '" + std::string(text) + "': " + why + " at offset " + std::to_string(i));
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> std::string {
    std::string s;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) s += text[i++];
    return s;
  };
  skip_ws();
  if (i == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = 1;
    Exponent e(names.size(), 0);
    bool need_factor = true;
    while (need_factor) {
      skip_ws();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        BigInt num(read_int());
        BigInt den = 1;
        skip_ws();
        if (i < text.size() && text[i] == '/') {
          ++i;
          skip_ws();
          std::string d = read_int();
          if (d.empty()) fail("missing denominator");
          den = BigInt(d);
          if (den == 0) fail("zero denominator");
        }
        coef *= Rational(num, den);
      } else if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        std::string id;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) id += text[i++];
        auto it = std::find(names.begin(), names.end(), id);
        if (it == names.end()) fail("unknown variable '" + id + "'");
        int power = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip_ws();
          std::string p = read_int();
          if (p.empty()) fail("missing exponent");
          power = std::stoi(p);
        }
        e[static_cast<std::size_t>(it - names.begin())] += power;
      } else {
        fail("expected a coefficient or variable");
      }
      skip_ws();
      need_factor = i < text.size() && text[i] == '*';
      if (need_factor) ++i;
    }
    out.add_term(e, sign * coef);
  }
  return out;
}

}  // namespace belyi
