#include <emulab/sanctions.hpp>

#include <cmath>
#include <stdexcept>

namespace emulab {

namespace {

void require_slope(Scalar c) {
  if (!std::isfinite(c) || !(c > 0)) {
    throw std::domain_error("inflation slope c must be finite and > 0");
  }
}

Scalar square(Scalar x) { return x * x; }

}  // namespace

UnionOutcome sanctioned_nash(const UnionRule& rule,
                             const SanctionContract& contract,
                             const LossParams& loss, Scalar c,
                             const UnionShock& shock) {
  if (!std::isfinite(contract.t)) {
    throw std::invalid_argument("SanctionContract: t must be finite");
  }
  return union_nash(rule, loss, c, shock, contract.t);
}

Scalar optimal_penalty(const LossParams& loss, Scalar c) {
  loss.validate();
  require_slope(c);
  // Solve (2 w_y k_target - t) / (2 c) = 0 for t.
  return 2 * loss.w_y * loss.k_target;
}

Scalar regime_expected_loss(Regime regime, const LossParams& loss, Scalar c,
                            Scalar sigma_u, Scalar sigma_a) {
  loss.validate();
  require_slope(c);
  if (!(sigma_u >= 0) || !(sigma_a >= 0)) {
    throw std::invalid_argument("shock standard deviations must be >= 0");
  }
  const Scalar first_best = loss.w_y * square(loss.k_target);
  switch (regime) {
    case Regime::Autonomy:
      // Full stabilization, full bias; sigma-independent.
      return square(loss.w_y * loss.k_target / c) + first_best;
    case Regime::StrictRule:
      // No bias, but y_i = +/- u_a survives: E[c^2 u_a^2 + w (u_a - k)^2].
      return c * c * sigma_a * sigma_a +
             loss.w_y * (sigma_a * sigma_a + square(loss.k_target));
    case Regime::Sanctioned:
      // At t* the bias is gone, stabilization is intact, and the fine is
      // zero on average.
    case Regime::Cooperative:
      return first_best;
    case Regime::Nash:
      break;
  }
  throw std::invalid_argument(
      "regime_expected_loss: no closed form for this regime");
}

ThresholdResult autonomy_vs_rule_threshold(const LossParams& loss, Scalar c) {
  loss.validate();
  require_slope(c);
  if (loss.w_y * loss.k_target == 0) {
    // No bias to trade against: the strict rule is weakly preferred at
    // every shock size.
    return {0, true};
  }
  // Equate (w k / c)^2 + w k^2 and (c^2 + w) sigma^2 + w k^2.
  const Scalar bias = loss.w_y * loss.k_target / c;
  return {bias / std::sqrt(c * c + loss.w_y), false};
}

RegimeComparison regime_comparison(const LossParams& loss, Scalar c,
                                   Scalar sigma_u, Scalar sigma_a) {
  RegimeComparison cmp;
  cmp.loss_autonomy =
      regime_expected_loss(Regime::Autonomy, loss, c, sigma_u, sigma_a);
  cmp.loss_strict_rule =
      regime_expected_loss(Regime::StrictRule, loss, c, sigma_u, sigma_a);
  cmp.loss_sanctioned =
      regime_expected_loss(Regime::Sanctioned, loss, c, sigma_u, sigma_a);
  cmp.loss_cooperative =
      regime_expected_loss(Regime::Cooperative, loss, c, sigma_u, sigma_a);
  cmp.loss_first_best = loss.w_y * square(loss.k_target);
  const ThresholdResult threshold = autonomy_vs_rule_threshold(loss, c);
  cmp.sigma_a_threshold = threshold.sigma_a_star;
  cmp.threshold_degenerate = threshold.degenerate;
  return cmp;
}

}  // namespace emulab
