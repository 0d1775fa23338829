#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace aixilab {

/// Exact rational arithmetic. Every probability, reward, discount weight and
/// value in the library is one of these; tie detection depends on it.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

/// Fixed-point decimal rendering truncated toward zero, for humans and plots.
std::string to_decimal(const Rational& value, int digits = 12);

Rational abs(const Rational& value);

}  // namespace aixilab
