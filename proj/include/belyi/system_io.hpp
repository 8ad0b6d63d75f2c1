#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "belyi/beleqns.hpp"
#include "belyi/groebner.hpp"

namespace belyi {

/// One equation in export syntax: "+3*a1*xP1^2 -1/2*yP1 +1", terms in
/// descending graded-lex order over the declared variable order.
std::string format_equation(const MultiPoly& p, const std::vector<std::string>& names);

/// "# ..." comments, an optional "chart ..." line, "var <name>" lines, then
/// one "poly: ..." line per equation. Deterministic.
std::string export_system(const PolynomialSystem& sys);

/// Inverse of export_system. Counts are not recoverable from the file and stay zero.
PolynomialSystem parse_system(std::string_view text);

/// Emptiness verdict for a system; flagged chart cases are always unknown.
EmptinessResult solve_system(const PolynomialSystem& sys, MonomialOrder order, const GroebnerLimits& limits = {});

}  // namespace belyi
