#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace belyi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

/// A desk-scale guard or solver limit was hit. Callers map this to exit code 3.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The affine chart / uniformizer assumption fails for a curve model.
class ChartFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (permutations, partitions, polynomials, systems).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(const Rational& q);
std::string to_string(const BigInt& n);

}  // namespace belyi
