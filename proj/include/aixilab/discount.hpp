#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aixilab/rational.hpp"

namespace aixilab {

/// The discount function gamma_t (t >= 1) together with its tail sums
/// Gamma_t = sum_{i >= t} gamma_i. All three kinds are summable and have
/// closed-form tails, so both are exact.
class DiscountSchedule {
 public:
  struct Geometric {
    Rational gamma;
  };
  struct FiniteLifetime {
    std::size_t lifetime;
  };
  struct Table {
    std::vector<Rational> weights;
  };

  /// gamma_t = gamma^t with gamma in (0, 1).
  static DiscountSchedule geometric(Rational gamma);
  /// gamma_t = 1 for t <= m, 0 afterwards; m >= 1.
  static DiscountSchedule finite_lifetime(std::size_t m);
  /// gamma_t = weights[t-1], zero past the end; weights nonnegative.
  static DiscountSchedule table(std::vector<Rational> weights);

  Rational gamma(std::size_t t) const;
  Rational big_gamma(std::size_t t) const;

  /// Least k >= 0 with Gamma_{k+1} / Gamma_1 < eps. A result of 0 means the
  /// bound already holds without looking ahead. Throws DomainError when
  /// eps <= 0 or the schedule is identically zero.
  std::size_t effective_horizon(const Rational& eps) const;

  /// min { t : Gamma_{t+1} = 0 } when it exists.
  std::optional<std::size_t> lifetime() const;

  const std::variant<Geometric, FiniteLifetime, Table>& kind() const { return kind_; }

  std::string describe() const;

 private:
  explicit DiscountSchedule(std::variant<Geometric, FiniteLifetime, Table> kind)
      : kind_(std::move(kind)) {}

  std::variant<Geometric, FiniteLifetime, Table> kind_;
};

}  // namespace aixilab
