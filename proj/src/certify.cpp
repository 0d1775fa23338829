#include "aixilab/certify.hpp"

#include <algorithm>

namespace aixilab {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::holds_exactly: return "holds_exactly";
    case Outcome::holds_certified: return "holds_certified";
    case Outcome::falsified: return "falsified";
    case Outcome::uncertifiable: return "uncertifiable";
  }
  return "unknown";
}

Outcome combine(const std::vector<Outcome>& outcomes) {
  auto rank = [](Outcome o) {
    switch (o) {
      case Outcome::holds_exactly: return 0;
      case Outcome::holds_certified: return 1;
      case Outcome::uncertifiable: return 2;
      case Outcome::falsified: return 3;
    }
    return 3;
  };
  Outcome worst = Outcome::holds_exactly;
  for (auto o : outcomes) {
    if (rank(o) > rank(worst)) worst = o;
  }
  return worst;
}

Interval difference(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval magnitude(const Interval& i) {
  if (i.lo >= 0) return i;
  if (i.hi <= 0) return {-i.hi, -i.lo};
  return {Rational(0), std::max<Rational>(-i.lo, i.hi)};
}

Outcome certify_less(const Interval& a, const Interval& b) {
  if (a.exact() && b.exact()) return a.lo < b.lo ? Outcome::holds_exactly : Outcome::falsified;
  if (a.hi < b.lo) return Outcome::holds_certified;
  if (a.lo >= b.hi) return Outcome::falsified;
  return Outcome::uncertifiable;
}

Outcome certify_less_equal(const Interval& a, const Interval& b) {
  if (a.exact() && b.exact()) return a.lo <= b.lo ? Outcome::holds_exactly : Outcome::falsified;
  if (a.hi <= b.lo) return Outcome::holds_certified;
  if (a.lo > b.hi) return Outcome::falsified;
  return Outcome::uncertifiable;
}

}  // namespace aixilab
