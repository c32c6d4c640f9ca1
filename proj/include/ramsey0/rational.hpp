#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ramsey0 {

/// Exact rational used for every density value.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

/// Parses "a/b", "a" or "-a/b". Throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

std::int64_t floor(const Rational& q);
std::int64_t ceil(const Rational& q);

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace ramsey0
