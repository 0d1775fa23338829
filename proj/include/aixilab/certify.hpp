#pragma once

#include <string>
#include <vector>

#include "aixilab/planner.hpp"

namespace aixilab {

/// Result of checking an inequality between values that may carry
/// truncation bounds.
enum class Outcome { holds_exactly, holds_certified, falsified, uncertifiable };

std::string to_string(Outcome outcome);

inline bool holds(Outcome o) { return o == Outcome::holds_exactly || o == Outcome::holds_certified; }

/// Worst outcome of a set: falsified > uncertifiable > certified > exact.
Outcome combine(const std::vector<Outcome>& outcomes);

/// Enclosure [lo, hi] of a true value. A truncated search only drops
/// nonnegative tail rewards, so the true value lies in
/// [value, value + truncation_bound].
struct Interval {
  Rational lo;
  Rational hi;

  static Interval of(const ValueResult& v) { return {v.value, v.value + v.truncation_bound}; }
  static Interval point(const Rational& r) { return {r, r}; }

  bool exact() const { return lo == hi; }
};

/// Enclosure of a - b.
Interval difference(const Interval& a, const Interval& b);
/// Enclosure of |x| over x in i.
Interval magnitude(const Interval& i);

/// a < b.
Outcome certify_less(const Interval& a, const Interval& b);
/// a <= b.
Outcome certify_less_equal(const Interval& a, const Interval& b);

}  // namespace aixilab
