#pragma once

#include <vector>

#include "aixilab/certify.hpp"
#include "aixilab/mixture.hpp"
#include "aixilab/planner.hpp"
#include "aixilab/priors.hpp"

namespace aixilab {

/// Legg-Hutter intelligence: the value of pi in xi from the empty history.
ValueResult upsilon(const Environment& xi, const Policy& pi, const DiscountSchedule& schedule,
                    std::size_t horizon);

struct UpsilonBounds {
  ValueResult lower;  // inf over policies (min-backup)
  ValueResult upper;  // sup over policies (max-backup)
};

UpsilonBounds upsilon_bounds(const EnvPtr& xi, const DiscountSchedule& schedule, std::size_t horizon);

struct IntelligenceReport {
  ValueResult upsilon;
  ValueResult lower;
  ValueResult upper;
  std::size_t horizon = 0;
  /// 0 < lower <= upsilon <= upper < 1.
  Outcome strict_bounds = Outcome::uncertifiable;
};

IntelligenceReport intelligence_report(const EnvPtr& xi, const Policy& pi,
                                       const DiscountSchedule& schedule, std::size_t horizon);

/// Agrees with pi on the first k steps (histories shorter than k), then
/// plays `fallback`. Its intelligence differs from pi's by at most
/// Gamma_{k+1} / Gamma_1 in every environment.
Policy truncate_policy(const Policy& pi, std::size_t k, Action fallback);

struct FirstActionRange {
  Action first;
  bool lucky = false;
  ValueResult lowest;   // inf of Upsilon over policies starting with `first`
  ValueResult highest;  // sup of Upsilon over policies starting with `first`
};

struct SampleScore {
  std::string policy;
  Action first;
  ValueResult score;
  Outcome side = Outcome::uncertifiable;  // on the side its first action predicts
};

struct GapReport {
  MixturePtr mixture;
  bool degenerate = false;  // gate weight 0: nothing to separate
  /// Lucky-first policies score above `high`, all others below `low`.
  Rational low;
  Rational high;
  std::vector<FirstActionRange> ranges;
  std::vector<SampleScore> samples;
  /// The closed interval [low, high] contains no intelligence score.
  Outcome empty_interval = Outcome::uncertifiable;
};

/// Builds gate_weight * gate(lucky) + base_weight * xi and certifies, over
/// every first action, that no policy's intelligence falls in [low, high]
/// with low = base_weight xi(e) / xi'(e) and high = gate_weight / xi'(e).
/// `samples` are additionally scored one by one.
GapReport intelligence_gap_experiment(Action lucky, const Rational& gate_weight,
                                      const Rational& base_weight, const MixturePtr& xi,
                                      const DiscountSchedule& schedule, std::size_t horizon,
                                      const std::vector<Policy>& samples = {});

struct StupidityReport {
  // Some optimal agents are stupid: a near-pessimal policy, emulated.
  std::size_t truncation_depth = 0;
  ValueResult lower;                 // inf Upsilon_xi
  ValueResult near_pessimal;         // Upsilon_xi of the truncated minimizer
  Outcome density = Outcome::uncertifiable;  // near_pessimal <= lower + Gamma_{k+1}/Gamma_1
  EmulationMixture stupid_prior;
  ValueResult stupid_agent;          // Upsilon_xi of the optimal policy for stupid_prior
  Outcome stupid = Outcome::uncertifiable;   // stupid_agent < lower + eps

  // Any computable policy can be smart.
  std::string user_policy;
  EmulationMixture smart_prior;
  ValueResult user_score;            // Upsilon_{xi'}(pi)
  ValueResult smart_upper;           // sup Upsilon_{xi'}
  Outcome smart = Outcome::uncertifiable;    // user_score > smart_upper - eps

  // A fixed optimal agent is stupid for some measure.
  Action aixi_first;
  MixturePtr rigged;
  ValueResult aixi_score;            // Upsilon_{xi''}(pi*_xi)
  ValueResult rigged_upper;          // sup Upsilon_{xi''}
  Outcome aixi_low = Outcome::uncertifiable;   // aixi_score <= eps
  Outcome rigged_high = Outcome::uncertifiable;  // rigged_upper >= 1 - eps
};

StupidityReport stupidity_experiment(const MixturePtr& xi, const Rational& eps,
                                     const DiscountSchedule& schedule, std::size_t horizon,
                                     const TieBreak& tb, const Policy& user_policy);

}  // namespace aixilab
