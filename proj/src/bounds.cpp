#include "belyi/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace belyi {

namespace mp = boost::multiprecision;
using Complex = mp::cpp_complex_50;

AlgebraicPoint AlgebraicPoint::rational(BigInt p, BigInt q) {
  if (q == 0) throw std::invalid_argument("rational point with zero denominator; use infinity()");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  BigInt g = mp::gcd(mp::abs(p), q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  AlgebraicPoint pt;
  pt.value_ = RationalValue{p, q};
  return pt;
}

AlgebraicPoint AlgebraicPoint::algebraic(std::vector<BigInt> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) throw std::invalid_argument("minimal polynomial must have degree >= 1");
  if (coeffs.back() < 0) throw std::invalid_argument("minimal polynomial must have positive leading coefficient");
  BigInt content = 0;
  for (const auto& c : coeffs) content = mp::gcd(content, mp::abs(c));
  if (content != 1) throw std::invalid_argument("minimal polynomial must be primitive (content 1)");
  AlgebraicPoint pt;
  pt.value_ = MinimalPolynomial{std::move(coeffs)};
  return pt;
}

AlgebraicPoint AlgebraicPoint::infinity() {
  AlgebraicPoint pt;
  pt.value_ = Infinity{};
  return pt;
}

int AlgebraicPoint::orbit_size() const {
  if (is_algebraic()) return static_cast<int>(as_algebraic().coeffs.size()) - 1;
  return 1;
}

std::string AlgebraicPoint::to_string() const {
  if (is_infinity()) return "oo";
  if (is_rational()) {
    const auto& r = as_rational();
    return r.den == 1 ? r.num.str() : r.num.str() + "/" + r.den.str();
  }
  return "root of " + format_integer_polynomial(as_algebraic().coeffs);
}

AlgebraicPoint parse_point(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "oo" || s == "inf" || s == "infinity") return AlgebraicPoint::infinity();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return AlgebraicPoint::rational(BigInt(s));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return AlgebraicPoint::rational(BigInt(s.substr(0, slash)), den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad point '" + std::string(text) + "'");
  }
}

std::vector<BigInt> parse_integer_polynomial(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<BigInt> coeffs;
  std::size_t i = 0;
  auto fail = [&] { throw ParseError("bad integer polynomial '" + std::string(text) + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
    unsigned power = 0;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail();
      ++i;
      if (i >= s.size() || s[i] != 'x') fail();
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) fail();
        power = static_cast<unsigned>(std::stoul(e));
      }
    } else if (digits.empty()) {
      fail();
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') fail();
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coef;
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

std::string format_integer_polynomial(const std::vector<BigInt>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const BigInt& c = coeffs[k];
    if (c == 0) continue;
    BigInt mag = mp::abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << 'x';
    if (k >= 2) os << '^' << k;
  }
  if (first) return "0";
  return os.str();
}

nlohmann::json HeightValue::to_json() const {
  nlohmann::json j;
  if (exact) {
    j["exact"] = exact->str();
  } else {
    j["value"] = value.str(30);
    j["errorBound"] = error.str(5, std::ios_base::scientific);
  }
  return j;
}

namespace {

Complex horner(const std::vector<Real>& c, const Complex& z) {
  Complex acc(0);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + Complex(c[k]);
  return acc;
}

Complex horner_derivative(const std::vector<Real>& c, const Complex& z) {
  Complex acc(0);
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + Complex(c[k] * static_cast<int>(k));
  return acc;
}

// Seeds from the companion matrix in double precision.
std::vector<Complex> seed_roots(const std::vector<BigInt>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  double lead = coeffs.back().convert_to<double>();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i].convert_to<double>() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) {
    std::complex<double> r = solver.eigenvalues()[i];
    // nudge off exact symmetry so Aberth steps stay well defined
    out.emplace_back(Real(r.real()) + Real(1e-9) * (i + 1), Real(r.imag()) + Real(1e-9) * (i + 2));
  }
  return out;
}

}  // namespace

Real mahler_measure(const std::vector<BigInt>& coeffs, Real* error) {
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) throw std::invalid_argument("mahler_measure: degree must be >= 1");
  std::vector<Real> c(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = Real(coeffs[k]);

  // Aberth-Ehrlich refinement at 50 digits.
  std::vector<Complex> z = seed_roots(coeffs);
  const Real tiny = Real("1e-45");
  for (int iter = 0; iter < 200; ++iter) {
    Real max_step = 0;
    for (int i = 0; i < n; ++i) {
      Complex p = horner(c, z[i]);
      Complex dp = horner_derivative(c, z[i]);
      if (mp::abs(p) == 0) continue;
      Complex ratio = p / dp;
      Complex sum(0);
      for (int j = 0; j < n; ++j)
        if (j != i) sum += Complex(1) / (z[i] - z[j]);
      Complex step = ratio / (Complex(1) - ratio * sum);
      z[i] -= step;
      max_step = std::max(max_step, Real(mp::abs(step)));
    }
    if (max_step < tiny) break;
  }

  // Inclusion discs: a root lies within n|p(z)/p'(z)| of z.
  std::vector<Real> radius(n);
  for (int i = 0; i < n; ++i) {
    Complex dp = horner_derivative(c, z[i]);
    if (mp::abs(dp) == 0) throw ResourceLimit("height: derivative vanishes at an approximate root");
    radius[i] = Real(n) * mp::abs(horner(c, z[i])) / mp::abs(dp) + Real("1e-48") * (1 + mp::abs(z[i]));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mp::abs(z[i] - z[j]) <= radius[i] + radius[j])
        throw ResourceLimit("height: root enclosures overlap at working precision");

  Real lead = mp::abs(c.back());
  Real prod = lead, upper = lead;
  for (int i = 0; i < n; ++i) {
    Real f = std::max(Real(1), Real(mp::abs(z[i])));
    prod *= f;
    upper *= f + radius[i];
  }
  if (error) *error = (upper - prod) + prod * Real("1e-45");
  return prod;
}

HeightValue height(const AlgebraicPoint& pt) {
  HeightValue h;
  if (pt.is_infinity()) {
    h.exact = BigInt(1);
    h.value = 1;
    return h;
  }
  if (pt.is_rational()) {
    const auto& r = pt.as_rational();
    h.exact = std::max<BigInt>(mp::abs(r.num), r.den);
    h.value = Real(*h.exact);
    return h;
  }
  const auto& coeffs = pt.as_algebraic().coeffs;
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n == 1) {
    h.exact = std::max<BigInt>(mp::abs(coeffs[0]), mp::abs(coeffs[1]));
    h.value = Real(*h.exact);
    return h;
  }
  Real err = 0;
  Real m = mahler_measure(coeffs, &err);
  Real inv_n = Real(1) / n;
  h.value = mp::pow(m, inv_n);
  Real hi = mp::pow(m + err, inv_n) - h.value;
  Real lo = m > err ? h.value - mp::pow(m - err, inv_n) : h.value;
  h.error = std::max(hi, lo);
  // at least 64 correct bits
  if (h.error > h.value * mp::ldexp(Real(1), -64)) throw ResourceLimit("height: precision below 64 bits");
  return h;
}

nlohmann::json BranchSet::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) pts.push_back(p.to_string());
  return {{"points", pts}, {"N", orbit_size}, {"H", height.to_json()}, {"infinityCountedAsOneOrbitPoint", counts_infinity}};
}

BranchSet make_branch_set(std::vector<AlgebraicPoint> points, std::optional<int> orbit_size_override) {
  BranchSet b;
  b.points = std::move(points);
  int n = 0;
  bool all_exact = true;
  BigInt exact_max = 1;
  Real value_max = 1, err_at_max = 0;
  for (const auto& p : b.points) {
    n += p.orbit_size();
    if (p.is_infinity()) b.counts_infinity = true;
    HeightValue h = height(p);
    if (h.exact) {
      exact_max = std::max(exact_max, *h.exact);
    } else {
      all_exact = false;
    }
    if (h.value > value_max) {
      value_max = h.value;
      err_at_max = h.error;
    }
  }
  b.orbit_size = orbit_size_override.value_or(n);
  if (b.orbit_size < 1) throw std::invalid_argument("branch set: N must be at least 1");
  if (all_exact) {
    b.height.exact = exact_max;
    b.height.value = Real(exact_max);
  } else {
    b.height.value = value_max;
    b.height.error = err_at_max;
  }
  return b;
}

Rational khadjavi_exponent(int n) {
  if (n < 1) throw std::invalid_argument("khadjavi: N must be >= 1");
  Rational e = Rational(9) * BigInt(n) * BigInt(n) * BigInt(n);
  if (n >= 2)
    e *= mp::pow(BigInt(2), static_cast<unsigned>(n - 2));
  else
    e /= 2;
  BigInt fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  return e * fact;
}

namespace {

std::optional<BigInt> exact_sqrt(const BigInt& v) {
  BigInt r = mp::sqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

}  // namespace

BoundValue khadjavi_bound(int n, const HeightValue& h) {
  if (h.value < 1) throw std::invalid_argument("khadjavi: height must be >= 1");
  BoundValue out;
  out.exponent = khadjavi_exponent(n);
  Real e_real = Real(mp::numerator(out.exponent)) / Real(mp::denominator(out.exponent));
  Real base_real = Real(4 * n) * h.value;
  out.log10 = e_real * mp::log10(base_real);

  if (h.exact && out.log10 <= Real(kExactBoundMaxDigits)) {
    BigInt base = BigInt(4 * n) * *h.exact;
    BigInt num = mp::numerator(out.exponent);
    BigInt den = mp::denominator(out.exponent);
    std::optional<BigInt> root = base;
    if (den == 2) {
      root = exact_sqrt(base);
    } else if (den != 1) {
      root.reset();
    }
    if (root) {
      out.exact = mp::pow(*root, num.convert_to<unsigned>());
      out.log10 = mp::log10(Real(*out.exact));
    }
  }
  return out;
}

BoundValue belyi_upper_bound(int deg_pi, const BranchSet& branch) {
  if (deg_pi < 1) throw std::invalid_argument("belyi_upper_bound: deg(pi) must be >= 1");
  BoundValue b = khadjavi_bound(branch.orbit_size, branch.height);
  if (b.exact) {
    *b.exact *= deg_pi;
    b.log10 = mp::log10(Real(*b.exact));
  } else {
    b.log10 += mp::log10(Real(deg_pi));
  }
  return b;
}

std::string BoundValue::to_string() const {
  if (exact && exact->str().size() <= 60) return exact->str();
  std::string digits = exact ? " (" + std::to_string(exact->str().size()) + " digits)" : "";
  return "10^" + log10.str(25) + digits;
}

nlohmann::json BoundValue::to_json() const {
  nlohmann::json j;
  j["exponent"] = exponent.str();
  j["log10"] = log10.str(30);
  if (exact) {
    std::string digits = exact->str();
    j["digits"] = digits.size();
    // long values stay available through the API only
    j["exact"] = digits.size() <= 200 ? nlohmann::json(digits) : nlohmann::json("omitted");
  } else {
    j["exact"] = nullptr;
  }
  return j;
}

}  // namespace belyi
