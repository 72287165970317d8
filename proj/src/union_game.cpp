#include <emulab/union_game.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace emulab {

namespace {

constexpr Scalar kConvergenceTol = 1e-10;
constexpr Scalar kNashGainTol = 1e-8;
constexpr Scalar kNaN = std::numeric_limits<Scalar>::quiet_NaN();

void require_slope(Scalar c) {
  if (!std::isfinite(c) || !(c > 0)) {
    throw std::domain_error("inflation slope c must be finite and > 0");
  }
}

void require_country(int country) {
  if (country != 1 && country != 2) {
    throw std::invalid_argument("country must be 1 or 2");
  }
}

// Country 1 draws +u_asym, country 2 draws -u_asym.
Scalar asym_sign(int country) { return country == 1 ? Scalar(1) : Scalar(-1); }

Scalar square(Scalar x) { return x * x; }

UnionOutcome no_equilibrium(Scalar desired_sum, Scalar feasible_sum) {
  UnionOutcome out;
  out.status = EquilibriumStatus::NoEquilibrium;
  out.m = kNaN;
  out.profile = {kNaN, kNaN};
  out.G1 = out.G2 = out.Ge1 = out.Ge2 = kNaN;
  out.y1 = out.y2 = out.p1 = out.p2 = kNaN;
  out.loss1 = out.loss2 = kNaN;
  out.desired_G_sum = desired_sum;
  out.feasible_G_sum = feasible_sum;
  return out;
}

}  // namespace

Scalar desired_policy_mix(const LossParams& loss, Scalar c, Scalar u_asym,
                          int country) {
  loss.validate();
  require_slope(c);
  require_country(country);
  return loss.w_y * loss.k_target / c - asym_sign(country) * u_asym;
}

Scalar country_loss(const UnionRule& rule, const LossParams& loss, Scalar c,
                    const UnionShock& shock, const FiscalProfile& profile,
                    Scalar Ge, int country, Scalar penalty_rate) {
  require_country(country);
  const Scalar own = country == 1 ? profile.g1 : profile.g2;
  const Scalar other = country == 1 ? profile.g2 : profile.g1;
  const Scalar G = (1 - rule.lambda) * own - rule.lambda * other;
  const Scalar y = G - Ge + asym_sign(country) * shock.u_asym;
  const Scalar p = Ge + c * y;
  return p * p + loss.w_y * square(y - loss.k_target) + penalty_rate * own;
}

UnionOutcome union_nash(const UnionRule& rule, const LossParams& loss,
                        Scalar c, const UnionShock& shock) {
  return union_nash(rule, loss, c, shock, /*penalty_rate=*/0);
}

UnionOutcome union_nash(const UnionRule& rule, const LossParams& loss,
                        Scalar c, const UnionShock& shock,
                        Scalar penalty_rate) {
  loss.validate();
  require_slope(c);
  if (!std::isfinite(rule.lambda) || !std::isfinite(penalty_rate)) {
    throw std::invalid_argument("union_nash: lambda and penalty must be finite");
  }

  const Scalar lambda = rule.lambda;

  if (rule.neutralizing()) {  // lambda = 1
    if (penalty_rate != 0) {
      // The own instrument has no output effect but the penalty still
      // bites: the objective is strictly monotone in g_i and no best
      // response exists. The runaway direction stands in for the witness.
      const Scalar runaway = penalty_rate > 0
                                 ? -std::numeric_limits<Scalar>::infinity()
                                 : std::numeric_limits<Scalar>::infinity();
      return no_equilibrium(runaway, 0);
    }
    // Own losses are flat: every profile is an equilibrium. Inaction is
    // the canonical selection; the bias is gone but so is any response to
    // the asymmetric shock.
    UnionOutcome out;
    out.status = EquilibriumStatus::Continuum;
    out.profile = {0, 0};
    out.Ge1 = out.Ge2 = 0;
    out.G1 = out.G2 = 0;
    out.m = -shock.u_common;
    out.y1 = shock.u_asym;
    out.y2 = -shock.u_asym;
    out.p1 = c * out.y1;
    out.p2 = c * out.y2;
    out.loss1 = square(out.p1) + loss.w_y * square(out.y1 - loss.k_target);
    out.loss2 = square(out.p2) + loss.w_y * square(out.y2 - loss.k_target);
    return out;
  }

  // Anticipated own contribution under rational expectations. The sanction
  // shifts the bias by t / (2 (1 - lambda)): the own-instrument effect on
  // G_i is 1 - lambda.
  const Scalar bias =
      (loss.w_y * loss.k_target - penalty_rate / (2 * (1 - lambda))) / c;

  UnionOutcome out;
  if (!rule.invertible()) {  // lambda = 1/2
    // Feasible contributions satisfy G1 + G2 = 0 whatever the profiles;
    // the fiscal targets sum to 2 * bias.
    const Scalar desired_sum = 2 * bias;
    if (desired_sum != 0) {
      return no_equilibrium(desired_sum, 0);
    }
    out.status = EquilibriumStatus::Continuum;
    // Minimal-norm selection on the equilibrium line g1 - g2 = -2 u_asym.
    out.profile = {-shock.u_asym, shock.u_asym};
  } else {
    const Vec2 desired(bias - shock.u_asym, bias + shock.u_asym);
    Mat2 response;
    response << 1 - lambda, -lambda,  //
        -lambda, 1 - lambda;
    const Vec2 g = response.partialPivLu().solve(desired);
    out.status = EquilibriumStatus::Unique;
    out.profile = {g[0], g[1]};
  }

  // Every equilibrium on this branch realizes the desired contributions:
  // activity is fully stabilized and the price carries only the bias.
  out.Ge1 = out.Ge2 = bias;
  out.G1 = bias - shock.u_asym;
  out.G2 = bias + shock.u_asym;
  out.m = -shock.u_common - lambda * (out.profile.g1 + out.profile.g2);
  out.y1 = out.y2 = 0;
  out.p1 = out.p2 = bias;
  const Scalar base = square(bias) + loss.w_y * square(loss.k_target);
  out.loss1 = base + penalty_rate * out.profile.g1;
  out.loss2 = base + penalty_rate * out.profile.g2;
  return out;
}

BestResponseTrace best_response_dynamics(const UnionRule& rule,
                                         const LossParams& loss, Scalar c,
                                         const UnionShock& shock,
                                         const FiscalProfile& g_init,
                                         int max_iters,
                                         Scalar divergence_bound) {
  loss.validate();
  require_slope(c);
  if (max_iters < 1) {
    throw std::invalid_argument("best_response_dynamics: max_iters >= 1");
  }
  if (!(divergence_bound > 0)) {
    throw std::invalid_argument(
        "best_response_dynamics: divergence_bound must be > 0");
  }

  BestResponseTrace trace;
  trace.profiles.push_back(g_init);

  if (rule.neutralizing()) {
    // Flat own losses; the inaction convention keeps every start in place.
    trace.verdict = BestResponseVerdict::StationarySet;
    return trace;
  }

  const Scalar lambda = rule.lambda;
  const Scalar d1 = desired_policy_mix(loss, c, shock.u_asym, 1);
  const Scalar d2 = desired_policy_mix(loss, c, shock.u_asym, 2);

  FiscalProfile g = g_init;
  for (int iter = 0; iter < max_iters; ++iter) {
    const FiscalProfile prev = g;
    // Country 1 moves first; country 2 responds to the updated g1.
    g.g1 = (d1 + lambda * g.g2) / (1 - lambda);
    g.g2 = (d2 + lambda * g.g1) / (1 - lambda);
    trace.profiles.push_back(g);
    if (std::abs(g.g1) > divergence_bound ||
        std::abs(g.g2) > divergence_bound) {
      trace.verdict = BestResponseVerdict::Diverged;
      return trace;
    }
    if (std::max(std::abs(g.g1 - prev.g1), std::abs(g.g2 - prev.g2)) <
        kConvergenceTol) {
      trace.verdict = BestResponseVerdict::Converged;
      return trace;
    }
  }
  trace.verdict = BestResponseVerdict::MaxIterations;
  return trace;
}

UnionOutcome cooperative_equilibrium(const UnionRule& rule,
                                     const LossParams& loss, Scalar c,
                                     const UnionShock& shock) {
  loss.validate();
  require_slope(c);
  if (rule.lambda != Scalar(0.5)) {
    throw std::invalid_argument(
        "cooperative_equilibrium requires the lambda = 1/2 rule");
  }
  // Joint minimization of loss1 + loss2 under rational expectations kills
  // both the bias (the rule pins G1 + G2 = 0, so inflating on average is
  // infeasible) and the asymmetric gap (G = -u_asym each state). Only the
  // split of g1 + g2 is indeterminate; take the minimal-norm point.
  UnionOutcome out;
  out.status = EquilibriumStatus::Continuum;
  out.profile = {-shock.u_asym, shock.u_asym};
  out.Ge1 = out.Ge2 = 0;
  out.G1 = -shock.u_asym;
  out.G2 = shock.u_asym;
  out.m = -shock.u_common;
  out.y1 = out.y2 = 0;
  out.p1 = out.p2 = 0;
  out.loss1 = out.loss2 = loss.w_y * square(loss.k_target);
  return out;
}

NashCheck verify_nash(const UnionOutcome& candidate, const UnionRule& rule,
                      const LossParams& loss, Scalar c,
                      const UnionShock& shock, Scalar search_radius,
                      int grid_points, Scalar penalty_rate) {
  loss.validate();
  require_slope(c);
  if (grid_points < 3) {
    throw std::invalid_argument("verify_nash: grid_points >= 3");
  }
  if (candidate.status == EquilibriumStatus::NoEquilibrium) {
    return {false, kNaN};
  }

  Scalar worst_gain = 0;
  for (int country = 1; country <= 2; ++country) {
    const Scalar Ge = country == 1 ? candidate.Ge1 : candidate.Ge2;
    const Scalar base = country_loss(rule, loss, c, shock, candidate.profile,
                                     Ge, country, penalty_rate);
    const Scalar center =
        country == 1 ? candidate.profile.g1 : candidate.profile.g2;
    for (int k = 0; k < grid_points; ++k) {
      const Scalar deviation =
          center - search_radius +
          2 * search_radius * Scalar(k) / Scalar(grid_points - 1);
      FiscalProfile trial = candidate.profile;
      (country == 1 ? trial.g1 : trial.g2) = deviation;
      const Scalar gain = base - country_loss(rule, loss, c, shock, trial, Ge,
                                              country, penalty_rate);
      worst_gain = std::max(worst_gain, gain);
    }
  }
  return {worst_gain <= kNashGainTol, worst_gain};
}

}  // namespace emulab
