#include "aixilab/discount.hpp"

#include "aixilab/types.hpp"

namespace aixilab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational power(const Rational& base, std::size_t exponent) {
  Rational out(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) out *= b;
    b *= b;
    exponent >>= 1U;
  }
  return out;
}

void require_positive_index(std::size_t t) {
  if (t == 0) throw DomainError("discount time steps are 1-based");
}

}  // namespace

DiscountSchedule DiscountSchedule::geometric(Rational gamma) {
  if (gamma <= 0 || gamma >= 1) {
    throw DomainError("geometric discount needs gamma in (0, 1), got " + to_string(gamma));
  }
  return DiscountSchedule(Geometric{std::move(gamma)});
}

DiscountSchedule DiscountSchedule::finite_lifetime(std::size_t m) {
  if (m == 0) throw DomainError("finite lifetime must be positive");
  return DiscountSchedule(FiniteLifetime{m});
}

DiscountSchedule DiscountSchedule::table(std::vector<Rational> weights) {
  for (const auto& w : weights) {
    if (w < 0) throw DomainError("discount table entries must be nonnegative");
  }
  return DiscountSchedule(Table{std::move(weights)});
}

Rational DiscountSchedule::gamma(std::size_t t) const {
  require_positive_index(t);
  return std::visit(overloaded{
                        [&](const Geometric& g) { return power(g.gamma, t); },
                        [&](const FiniteLifetime& f) { return Rational(t <= f.lifetime ? 1 : 0); },
                        [&](const Table& tab) {
                          return t <= tab.weights.size() ? tab.weights[t - 1] : Rational(0);
                        },
                    },
                    kind_);
}

Rational DiscountSchedule::big_gamma(std::size_t t) const {
  require_positive_index(t);
  return std::visit(overloaded{
                        // sum_{i>=t} g^i = g^t / (1 - g)
                        [&](const Geometric& g) { return Rational(power(g.gamma, t) / (1 - g.gamma)); },
                        [&](const FiniteLifetime& f) {
                          return Rational(t <= f.lifetime ? f.lifetime - t + 1 : 0);
                        },
                        [&](const Table& tab) {
                          Rational sum(0);
                          for (std::size_t i = t; i <= tab.weights.size(); ++i) sum += tab.weights[i - 1];
                          return sum;
                        },
                    },
                    kind_);
}

std::size_t DiscountSchedule::effective_horizon(const Rational& eps) const {
  if (eps <= 0) throw DomainError("effective horizon needs eps > 0");
  const Rational total = big_gamma(1);
  if (total == 0) throw DomainError("effective horizon of an all-zero discount schedule");
  // Gamma_t -> 0 for every kind, so this terminates.
  for (std::size_t k = 0;; ++k) {
    if (big_gamma(k + 1) / total < eps) return k;
  }
}

std::optional<std::size_t> DiscountSchedule::lifetime() const {
  return std::visit(overloaded{
                        [](const Geometric&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const FiniteLifetime& f) -> std::optional<std::size_t> { return f.lifetime; },
                        [](const Table& tab) -> std::optional<std::size_t> {
                          std::size_t m = tab.weights.size();
                          while (m > 0 && tab.weights[m - 1] == 0) --m;
                          return m;
                        },
                    },
                    kind_);
}

std::string DiscountSchedule::describe() const {
  return std::visit(overloaded{
                        [](const Geometric& g) { return "geometric(" + to_string(g.gamma) + ")"; },
                        [](const FiniteLifetime& f) {
                          return "finite_lifetime(" + std::to_string(f.lifetime) + ")";
                        },
                        [](const Table& tab) {
                          std::string s = "table(";
                          for (std::size_t i = 0; i < tab.weights.size(); ++i) {
                            if (i) s += ", ";
                            s += to_string(tab.weights[i]);
                          }
                          return s + ")";
                        },
                    },
                    kind_);
}

}  // namespace aixilab
