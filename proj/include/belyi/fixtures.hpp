#pragma once

#include <functional>
#include <string_view>

#include "belyi/beleqns.hpp"

namespace belyi {

/// x^4 + y^4 - 1 in the chart z = 1, genus 3.
CurveModel fermat_quartic_curve();
/// D0 = (1 : 0 : 1); basis of H^0(L^t) for t <= 10, truncated by tier.
RRData fermat_quartic_rr(int t);

/// f = y: the affine line inside P^1, genus 0.
CurveModel projective_line_curve();
/// D0 = [infinity]; basis 1, x, ..., x^t.
RRData projective_line_rr(int t);

struct CurveFixture {
  CurveModel curve;
  std::function<RRData(int)> rr;
};

/// "fermat4" or "p1".
CurveFixture curve_fixture(std::string_view name);

}  // namespace belyi
