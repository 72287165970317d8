#pragma once

///////////////////////////////////////////////////////////////////////////////
//
// Two-country monetary union. Country i = 1, 2 faces the demand
// disturbance u_i = u_common +/- u_asym and runs the local reduced form
//
//   y_i = G_i - Ge_i +/- u_asym,      p_i = Ge_i + c y_i,
//
// where the central bank commits to m = -u_common - lambda (g_1 + g_2) and
//
//   G_i = (1 - lambda) g_i - lambda g_j
//
// is what remains of the local policy mix once the monetary reaction is
// folded in. Both fiscal authorities carry the closed-economy loss and
// move after observing the shocks; the Nash equilibrium of their
// simultaneous game is governed by the response matrix
//
//   [ 1-lambda   -lambda  ]
//   [  -lambda  1-lambda  ],      det = 1 - 2 lambda.
//
// lambda = 1/2 makes the matrix singular: feasible G_1 + G_2 is pinned to
// zero, incompatible with two positively biased targets, and the game has
// no equilibrium. lambda = 1 zeroes the own-instrument effect and leaves a
// continuum (bias gone, stabilization gone). Every other lambda yields a
// unique equilibrium carrying the closed-economy bias and full
// stabilization of both shock components.
//
///////////////////////////////////////////////////////////////////////////////

#include <vector>

#include <emulab/closed_policy.hpp>
#include <emulab/types.hpp>

namespace emulab {

struct UnionShock {
  Scalar u_common = 0;  // symmetric component u
  Scalar u_asym = 0;    // asymmetric component; country 1 draws +u_asym
};

struct UnionRule {
  Scalar lambda = 0;  // monetary reaction to g_1 + g_2

  bool invertible() const { return lambda != Scalar(0.5); }
  bool neutralizing() const { return lambda == Scalar(1); }
};

struct FiscalProfile {
  Scalar g1 = 0;
  Scalar g2 = 0;
};

enum class EquilibriumStatus { Unique, Continuum, NoEquilibrium };

struct UnionOutcome {
  EquilibriumStatus status;
  Scalar m;  // monetary instrument at the realized shock
  FiscalProfile profile;
  Scalar G1, G2;    // effective local contributions
  Scalar Ge1, Ge2;  // their rationally anticipated values
  Scalar y1, y2;
  Scalar p1, p2;
  Scalar loss1, loss2;
  // Witness when status == NoEquilibrium: the fiscal authorities jointly
  // demand desired_G_sum while the rule only admits feasible_G_sum. All
  // other numeric fields are NaN in that case.
  Scalar desired_G_sum = 0;
  Scalar feasible_G_sum = 0;
};

// Ex-post contribution country 1 or 2 wants once shocks are observed: the
// level that zeroes its own activity gap given rational expectations,
// w_y k_target / c -/+ u_asym.
Scalar desired_policy_mix(const LossParams& loss, Scalar c, Scalar u_asym,
                          int country);

// Realized own loss of `country` at an arbitrary profile, holding its
// anticipated contribution Ge fixed. penalty_rate adds the linear sanction
// term t g_i (see sanctions.hpp); zero recovers the plain game.
Scalar country_loss(const UnionRule& rule, const LossParams& loss, Scalar c,
                    const UnionShock& shock, const FiscalProfile& profile,
                    Scalar Ge, int country, Scalar penalty_rate = 0);

// Nash equilibrium of the fiscal game under rational expectations. The
// penalty_rate overload is the sanctioned game; sanctions.hpp names it.
UnionOutcome union_nash(const UnionRule& rule, const LossParams& loss,
                        Scalar c, const UnionShock& shock);
UnionOutcome union_nash(const UnionRule& rule, const LossParams& loss,
                        Scalar c, const UnionShock& shock,
                        Scalar penalty_rate);

enum class BestResponseVerdict {
  Converged,      // successive profiles within 1e-10
  Diverged,       // some |g_i| exceeded the divergence bound
  StationarySet,  // lambda = 1: flat own losses, inaction keeps any start
  MaxIterations,  // budget exhausted without meeting any criterion
};

struct BestResponseTrace {
  std::vector<FiscalProfile> profiles;  // profiles.front() == g_init
  BestResponseVerdict verdict;

  const FiscalProfile& final_profile() const { return profiles.back(); }
};

// Numerical witness for the existence claims: countries alternate exact
// best responses (country 1 moves first in each sweep) with expectations
// pinned at their rational values. Converges to the unique Nash profile
// whenever |lambda / (1 - lambda)| < 1; at lambda = 1/2 with a positive
// bias every sweep overshoots by a constant and the trace grows without
// bound.
BestResponseTrace best_response_dynamics(const UnionRule& rule,
                                         const LossParams& loss, Scalar c,
                                         const UnionShock& shock,
                                         const FiscalProfile& g_init,
                                         int max_iters,
                                         Scalar divergence_bound);

// Joint minimization of loss1 + loss2 under the lambda = 1/2 rule and
// rational expectations. Restores the first best: y_i = p_i = 0 with the
// minimal-norm split g = (-u_asym, +u_asym) of the indeterminate sum.
UnionOutcome cooperative_equilibrium(const UnionRule& rule,
                                     const LossParams& loss, Scalar c,
                                     const UnionShock& shock);

struct NashCheck {
  bool is_nash;
  Scalar worst_gain;  // largest own-loss reduction any grid deviation found
};

// Grid oracle: scans unilateral deviations of either country on
// [g_i - search_radius, g_i + search_radius] with grid_points points,
// holding expectations at the candidate's values. True iff no deviation
// improves the deviator by more than 1e-8.
NashCheck verify_nash(const UnionOutcome& candidate, const UnionRule& rule,
                      const LossParams& loss, Scalar c,
                      const UnionShock& shock, Scalar search_radius,
                      int grid_points, Scalar penalty_rate = 0);

}  // namespace emulab
