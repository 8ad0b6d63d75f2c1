#include "belyi/system_io.hpp"

#include <algorithm>
#include <sstream>

namespace belyi {

namespace mp = boost::multiprecision;

std::string format_equation(const MultiPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::vector<const MultiPoly::TermMap::value_type*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) {
    return compare_monomials(a->first, b->first, MonomialOrder::grlex) > 0;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : terms) {
    const auto& [e, c] = *t;
    if (!first) os << ' ';
    first = false;
    os << (c < 0 ? '-' : '+') << Rational(mp::abs(c)).str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      os << '*' << names.at(i);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

std::string export_system(const PolynomialSystem& sys) {
  std::ostringstream os;
  for (const auto& c : sys.comments) os << "# " << c << '\n';
  if (sys.chart_request) os << "chart " << *sys.chart_request << '\n';
  for (const auto& v : sys.variables) os << "var " << v << '\n';
  for (const auto& e : sys.equations) os << "poly: " << format_equation(e, sys.variables) << '\n';
  return os.str();
}

PolynomialSystem parse_system(std::string_view text) {
  PolynomialSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("system line " + std::to_string(lineno) + ": " + why);
    };
    if (line.rfind("# ", 0) == 0) {
      sys.comments.push_back(line.substr(2));
    } else if (line[0] == '#') {
      sys.comments.push_back(line.substr(1));
    } else if (line.rfind("chart ", 0) == 0) {
      sys.chart_request = line.substr(6);
    } else if (line.rfind("var ", 0) == 0) {
      if (!sys.equations.empty()) fail("variable declared after equations");
      std::string name = line.substr(4);
      if (name.empty() || std::find(sys.variables.begin(), sys.variables.end(), name) != sys.variables.end())
        fail("empty or duplicate variable name");
      sys.variables.push_back(name);
    } else if (line.rfind("poly:", 0) == 0) {
      sys.equations.push_back(parse_polynomial(std::string_view(line).substr(5), sys.variables));
    } else {
      fail("unrecognized line '" + line + "'");
    }
  }
  return sys;
}

EmptinessResult solve_system(const PolynomialSystem& sys, MonomialOrder order, const GroebnerLimits& limits) {
  if (sys.chart_request) {
    EmptinessResult r;
    r.verdict = Verdict::unknown;
    r.reason = "chart transformation requested: " + *sys.chart_request;
    return r;
  }
  return is_empty_variety(sys.equations, order, limits);
}

}  // namespace belyi
