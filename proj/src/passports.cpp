#include "belyi/passports.hpp"

#include <map>
#include <stdexcept>

namespace belyi {

RamificationType::RamificationType(int degree, CycleType l0, CycleType l1, CycleType linf)
    : degree(degree), lambda0(std::move(l0)), lambda1(std::move(l1)), lambda_inf(std::move(linf)) {
  if (degree <= 0) throw std::invalid_argument("ramification type degree must be positive");
  for (const CycleType* ct : {&lambda0, &lambda1, &lambda_inf})
    if (ct->total() != degree)
      throw std::invalid_argument("partition " + ct->to_string() + " does not sum to " + std::to_string(degree));
}

std::string RamificationType::to_string() const {
  return std::to_string(degree) + ": " + lambda0.to_string() + lambda1.to_string() + lambda_inf.to_string();
}

nlohmann::json RamificationType::to_json() const {
  return nlohmann::json::array({lambda0.parts, lambda1.parts, lambda_inf.parts});
}

RamificationType parse_ramification_type(std::string_view text, std::optional<int> degree) {
  std::vector<std::string_view> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '/') {
      pieces.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (pieces.size() != 3) throw ParseError("ramification type needs three '/'-separated partitions: '" + std::string(text) + "'");
  CycleType l0 = parse_cycle_type(pieces[0]);
  CycleType l1 = parse_cycle_type(pieces[1]);
  CycleType li = parse_cycle_type(pieces[2]);
  int d = degree.value_or(l0.total());
  try {
    return RamificationType(d, l0, l1, li);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(CycleType{cur});
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<CycleType> enumerate_partitions(int d) {
  if (d <= 0) throw std::invalid_argument("enumerate_partitions: degree must be positive");
  if (d > kPartitionMaxDegree)
    throw ResourceLimit("enumerate_partitions: degree " + std::to_string(d) + " exceeds guard " +
                        std::to_string(kPartitionMaxDegree));
  std::vector<CycleType> out;
  std::vector<int> cur;
  partitions_rec(d, d, cur, out);
  return out;
}

std::optional<int> rh_genus(const RamificationType& lambda) {
  int rhs = lambda.degree - lambda.r0() - lambda.r1() - lambda.r_inf();
  if (rhs < -2 || rhs % 2 != 0) return std::nullopt;
  return (rhs + 2) / 2;
}

std::vector<RamificationType> types_with_genus(int d, int g) {
  if (g < 0) throw std::invalid_argument("types_with_genus: genus must be nonnegative");
  auto parts = enumerate_partitions(d);
  // r0 + r1 + r_inf = d + 2 - 2g
  int total_len = d + 2 - 2 * g;
  std::vector<RamificationType> out;
  if (total_len < 3) return out;
  std::map<int, std::vector<const CycleType*>> by_len;
  for (const auto& p : parts) by_len[static_cast<int>(p.length())].push_back(&p);
  for (const auto& l0 : parts) {
    for (const auto& l1 : parts) {
      int need = total_len - static_cast<int>(l0.length()) - static_cast<int>(l1.length());
      auto it = by_len.find(need);
      if (it == by_len.end()) continue;
      for (const CycleType* li : it->second) out.emplace_back(d, l0, l1, *li);
    }
  }
  return out;
}

int lower_bound_from_genus(int g) {
  if (g < 0) throw std::invalid_argument("lower_bound_from_genus: genus must be nonnegative");
  return 2 * g + 1;
}

CurveFamily parse_curve_family(std::string_view name) {
  if (name == "fermat") return CurveFamily::fermat;
  if (name == "cyclic_superelliptic" || name == "superelliptic") return CurveFamily::cyclic_superelliptic;
  throw ParseError("unknown curve family '" + std::string(name) + "'");
}

int family_upper_bound(CurveFamily family, int param) {
  if (param <= 0) throw std::invalid_argument("family_upper_bound: parameter must be positive");
  switch (family) {
    case CurveFamily::fermat:
      return param * param;
    case CurveFamily::cyclic_superelliptic:
      if (param % 2 == 0) throw std::invalid_argument("family_upper_bound: y^2 - y = x^d needs odd d");
      return param;
  }
  throw std::invalid_argument("family_upper_bound: unknown family");
}

}  // namespace belyi
