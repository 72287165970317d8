#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Stability-Pact sanctions as a linear incentive contract: country i's
// loss gains the term t g_i, a fine on deficits mirrored by an equal
// reward on surpluses. The penalty shifts each fiscal authority's
// first-order condition without touching its stabilization motive, so
// under the lambda = 0 rule the anticipated price falls linearly in t,
//
//   p_i = (2 w_y k_target - t) / (2 c),
//
// and crosses zero at t* = 2 w_y k_target. At that rate the union reaches
// the first best: no inflation bias, full asymmetric-shock stabilization,
// and a fine that nets to zero in expectation. (At other invertible lambda
// the shift is t / (2 (1 - lambda)) because the own-instrument effect on
// the local mix is 1 - lambda.)
//
// regime_expected_loss / autonomy_vs_rule_threshold map the welfare
// comparison between budgetary autonomy (lambda = 0), the strict rule
// (lambda = 1), the sanctioned game, and the cooperative benchmark: rules
// win when asymmetric shocks are small relative to the bias, autonomy wins
// when they are large, sanctions dominate both.
//
///////////////////////////////////////////////////////////////////////////////

#include <emulab/union_game.hpp>

namespace emulab {

struct SanctionContract {
  Scalar t = 0;  // loss units per unit of own fiscal instrument
};

enum class Regime {
  Autonomy,     // lambda = 0, no sanctions
  StrictRule,   // lambda = 1
  Sanctioned,   // lambda = 0 with the contract penalty
  Cooperative,  // lambda = 1/2, joint fiscal choice
  Nash,         // the scenario's own lambda (no closed-form entry here)
};

struct RegimeComparison {
  Scalar loss_autonomy;
  Scalar loss_strict_rule;
  Scalar loss_sanctioned;  // at t*
  Scalar loss_cooperative;
  Scalar loss_first_best;
  Scalar sigma_a_threshold;
  bool threshold_degenerate;
};

struct ThresholdResult {
  Scalar sigma_a_star;
  bool degenerate;  // k_target = 0: the strict rule is weakly preferred
                    // at every shock size
};

// Nash equilibrium of the fiscal game when each country minimizes
// p_i^2 + w_y (y_i - k_target)^2 + t g_i. Reported losses include the
// penalty term. Status taxonomy as union_nash, with two shifts: at
// lambda = 1/2 an equilibrium exists only if the sanctioned desired-G sum
// is zero, and at lambda = 1 a nonzero t leaves an unbounded incentive
// (no equilibrium).
UnionOutcome sanctioned_nash(const UnionRule& rule,
                             const SanctionContract& contract,
                             const LossParams& loss, Scalar c,
                             const UnionShock& shock);

// Penalty rate that removes the inflation bias of the lambda = 0 game:
// t* = 2 w_y k_target.
Scalar optimal_penalty(const LossParams& loss, Scalar c);

// Per-country expected loss of the named regime. Independent of sigma_u:
// the monetary rule absorbs common shocks in every regime.
Scalar regime_expected_loss(Regime regime, const LossParams& loss, Scalar c,
                            Scalar sigma_u, Scalar sigma_a);

// Shock size at which budgetary autonomy and the strict rule trade
// places: (w_y k_target / c) / sqrt(c^2 + w_y). Autonomy is strictly
// better above, the strict rule strictly better below.
ThresholdResult autonomy_vs_rule_threshold(const LossParams& loss, Scalar c);

RegimeComparison regime_comparison(const LossParams& loss, Scalar c,
                                   Scalar sigma_u, Scalar sigma_a);

}  // namespace emulab
