#include <emulab/closed_policy.hpp>

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

ClosedOutcome make_outcome(const LossParams& loss, Scalar c, Scalar M_e,
                           Scalar g_e, Scalar expected_loss) {
  ClosedOutcome out;
  out.M_e = M_e;
  out.M_intercept = M_e;  // the realized mix offsets the shock one for one
  out.M_slope = -1;
  out.g_e = g_e;
  out.y = 0;
  out.p = M_e;
  out.expected_loss = expected_loss;
  out.loss = loss;
  out.c = c;
  return out;
}

}  // namespace

void LossParams::validate() const {
  if (!std::isfinite(w_y) || !(w_y > 0)) {
    throw std::invalid_argument("LossParams: w_y must be finite and > 0");
  }
  if (!std::isfinite(k_target) || k_target < 0) {
    throw std::invalid_argument(
        "LossParams: k_target must be finite and >= 0");
  }
}

Scalar ClosedOutcome::realized_loss_at(Scalar u) const {
  const Scalar y_at = M_at(u) - M_e + u;
  const Scalar p_at = M_e + c * y_at;
  return p_at * p_at + loss.w_y * square(y_at - loss.k_target);
}

ClosedOutcome discretion_equilibrium(const LossParams& loss, Scalar c,
                                     Scalar /*u*/) {
  loss.validate();
  require_slope(c);
  const Scalar bias = loss.w_y * loss.k_target / c;
  const Scalar expected =
      square(bias) + loss.w_y * square(loss.k_target);
  return make_outcome(loss, c, bias, /*g_e=*/0, expected);
}

ClosedOutcome commitment_equilibrium(const LossParams& loss, Scalar c,
                                     Scalar /*u*/) {
  loss.validate();
  require_slope(c);
  return make_outcome(loss, c, /*M_e=*/0, /*g_e=*/0,
                      loss.w_y * square(loss.k_target));
}

ClosedOutcome inflation_targeting_equilibrium(const LossParams& loss, Scalar c,
                                              Scalar u) {
  // Minimizing p^2 ex post forces p = 0, hence M_e = 0 and M = -u: the
  // commitment outcome, as long as only demand shocks are present.
  return commitment_equilibrium(loss, c, u);
}

ClosedOutcome timing_game(TimingRule rule, const LossParams& loss, Scalar c,
                          Scalar u) {
  loss.validate();
  require_slope(c);
  switch (rule) {
    case TimingRule::FixedMonetary: {
      // m(u) = -u ignores g, so the stage-3 fiscal choice re-imposes the
      // discretionary first-order condition: g = w_y k_target / c in every
      // state and the bias prevails ex post.
      const Scalar g_e = loss.w_y * loss.k_target / c;
      ClosedOutcome out = discretion_equilibrium(loss, c, u);
      out.g_e = g_e;
      return out;
    }
    case TimingRule::DisciplineRule:
      // m = -u - g: fiscal action has zero output effect, any g is a best
      // response; g = 0 is the canonical selection.
    case TimingRule::FiscalNorm:
      return make_outcome(loss, c, /*M_e=*/0, /*g_e=*/0,
                          loss.w_y * square(loss.k_target));
  }
  throw std::invalid_argument("timing_game: unknown rule");
}

Scalar expected_loss_closed(RegimeKind regime, const LossParams& loss,
                            Scalar c, Scalar shock_variance) {
  loss.validate();
  require_slope(c);
  if (!(shock_variance >= 0)) {
    throw std::invalid_argument("shock_variance must be >= 0");
  }
  const Scalar first_best = loss.w_y * square(loss.k_target);
  switch (regime) {
    case RegimeKind::Discretion:
      return square(loss.w_y * loss.k_target / c) + first_best;
    case RegimeKind::Commitment:
    case RegimeKind::InflationTargeting:
      return first_best;
  }
  throw std::invalid_argument("expected_loss_closed: unknown regime");
}

}  // namespace emulab
