#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Aggregate (closed-economy) policy game on the reduced form
//
//   y = M - M_e + u,      p = M_e + c y,
//
// where M = m + g is the policy mix in output-effect units, M_e its
// rationally anticipated value and u a zero-mean demand disturbance.
// Authorities share the loss
//
//   L = p^2 + w_y (y - k_target)^2,
//
// with k_target >= 0 the activity level desired in excess of the supply
// curve. Optimizing after expectations have formed produces the inflation
// bias M_e = w_y k_target / c; committing to the rule M = -u (or targeting
// prices alone, absent supply shocks) removes it. Every regime here
// stabilizes demand shocks completely, so realized (y, p) do not depend on
// the draw of u and the regimes differ only in the anticipated component.
//
// timing_game covers the four-step variant: the central bank commits to a
// rule, shocks realize, the discretionary fiscal authority moves, and the
// monetary rule is applied last. A rule that ignores g hands the bias back
// to the fiscal last mover; the compensating rule m = -u - g and the g = 0
// norm both recover the commitment outcome.
//
///////////////////////////////////////////////////////////////////////////////

#include <emulab/types.hpp>

namespace emulab {

struct LossParams {
  Scalar w_y;       // weight on the activity gap
  Scalar k_target;  // desired activity in excess of the natural level

  // Throws std::invalid_argument unless w_y > 0 and k_target >= 0.
  void validate() const;
};

enum class RegimeKind { Discretion, Commitment, InflationTargeting };

// Monetary rules for the four-step timing game.
enum class TimingRule {
  FixedMonetary,   // m(u) = -u, no reaction to g
  DisciplineRule,  // m(u, g) = -u - g: fiscal action has no output effect
  FiscalNorm,      // g = 0 imposed, m(u) = -u
};

struct ClosedOutcome {
  Scalar M_e;          // anticipated policy mix
  Scalar M_intercept;  // realized mix M(u) = M_intercept + M_slope u
  Scalar M_slope;      // -1 in every regime: demand shocks fully absorbed
  Scalar g_e;          // anticipated fiscal component (identified only in
                       // the timing game; aggregate regimes report 0)
  Scalar y;            // activity gap, identically 0
  Scalar p;            // price deviation, equal to M_e
  Scalar expected_loss;

  // Carried so an outcome can evaluate itself at any shock draw.
  LossParams loss;
  Scalar c;

  Scalar M_at(Scalar u) const { return M_intercept + M_slope * u; }
  Scalar realized_loss_at(Scalar u) const;
};

ClosedOutcome discretion_equilibrium(const LossParams& loss, Scalar c,
                                     Scalar u);
ClosedOutcome commitment_equilibrium(const LossParams& loss, Scalar c,
                                     Scalar u);
ClosedOutcome inflation_targeting_equilibrium(const LossParams& loss, Scalar c,
                                              Scalar u);
ClosedOutcome timing_game(TimingRule rule, const LossParams& loss, Scalar c,
                          Scalar u);

// Closed-form expected loss of a regime. Independent of shock_variance:
// every regime stabilizes demand shocks in full.
Scalar expected_loss_closed(RegimeKind regime, const LossParams& loss,
                            Scalar c, Scalar shock_variance);

}  // namespace emulab
