#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <emulab/closed_policy.hpp>

#include "oracles.hpp"

using namespace emulab;

namespace {

// Realized loss as a free function of the mix M, at fixed expectations:
// the objective the discretionary authority actually minimizes.
double loss_of_mix(const LossParams& loss, double c, double M_e, double u,
                   double M) {
  const double y = M - M_e + u;
  const double p = M_e + c * y;
  return p * p + loss.w_y * (y - loss.k_target) * (y - loss.k_target);
}

}  // namespace

TEST_CASE("discretion carries the bias w_y k / c") {
  const ClosedOutcome out = discretion_equilibrium({1, 1}, 1, 0.5);
  CHECK(out.M_e == 1);
  CHECK(out.M_at(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out.y == 0);
  CHECK(out.p == 1);
  CHECK(out.expected_loss == doctest::Approx(2).epsilon(1e-14));
}

TEST_CASE("no target above natural output, no bias") {
  const ClosedOutcome out = discretion_equilibrium({1, 0}, 1, 0.3);
  CHECK(out.M_e == 0);
  CHECK(out.p == 0);
  CHECK(out.M_at(0.3) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(out.expected_loss == 0);
}

TEST_CASE("discretion verified by numerical minimization at the fixed point") {
  const LossParams loss{2, 1};
  const double c = 0.5;
  const ClosedOutcome out = discretion_equilibrium(loss, c, 0);
  CHECK(out.M_e == doctest::Approx(4).epsilon(1e-14));
  CHECK(out.p == doctest::Approx(4).epsilon(1e-14));

  // Ex post, with expectations frozen at M_e, the loss must be minimized
  // at the reported mix; then the rational-expectations fixed point makes
  // that mix equal M_e at u = 0.
  const auto objective = [&](double M) {
    return loss_of_mix(loss, c, out.M_e, 0, M);
  };
  const double argmin = oracles::golden_min(objective, out.M_e - 10, out.M_e + 10);
  CHECK(argmin == doctest::Approx(out.M_at(0)).epsilon(1e-7));
  CHECK(out.M_at(0) == doctest::Approx(out.M_e).epsilon(1e-14));
}

TEST_CASE("first-order condition holds at the discretionary mix") {
  auto gen = oracles::rng(41);
  for (int i = 0; i < 200; ++i) {
    const LossParams loss{oracles::uniform(gen, 0.2, 3),
                          oracles::uniform(gen, 0, 2)};
    const double c = oracles::uniform(gen, 0.3, 3);
    const double u = oracles::uniform(gen, -1, 1);
    const ClosedOutcome out = discretion_equilibrium(loss, c, u);
    const auto objective = [&](double M) {
      return loss_of_mix(loss, c, out.M_e, u, M);
    };
    CHECK(std::abs(oracles::central_diff(objective, out.M_at(u))) < 1e-6);
  }
}

TEST_CASE("expected mix over a zero-mean sample equals M_e") {
  const LossParams loss{1.5, 0.8};
  const ClosedOutcome out = discretion_equilibrium(loss, 2, 0);
  auto gen = oracles::rng(17);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    // symmetric pair: exactly zero-mean sample
    const double u = oracles::uniform(gen, -1, 1);
    sum += out.M_at(u) + out.M_at(-u);
  }
  CHECK(sum / (2 * n) == doctest::Approx(out.M_e).epsilon(1e-12));
}

TEST_CASE("commitment absorbs the shock with zero inflation") {
  ClosedOutcome out = commitment_equilibrium({1, 1}, 1, 0.5);
  CHECK(out.M_at(0.5) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(out.p == 0);
  CHECK(out.y == 0);

  out = commitment_equilibrium({1, 1}, 1, 0);
  CHECK(out.M_at(0) == 0);
  CHECK(out.p == 0);
}

TEST_CASE("commitment gap equals the squared bias") {
  const double discretion = expected_loss_closed(RegimeKind::Discretion, {1, 1}, 1, 0.09);
  const double commitment = expected_loss_closed(RegimeKind::Commitment, {1, 1}, 1, 0.09);
  CHECK(discretion - commitment == doctest::Approx(1).epsilon(1e-14));
}

TEST_CASE("inflation targeting reproduces commitment exactly") {
  auto gen = oracles::rng(23);
  for (int i = 0; i < 100; ++i) {
    const LossParams loss{oracles::uniform(gen, 0.2, 3),
                          oracles::uniform(gen, 0, 2)};
    const double c = oracles::uniform(gen, 0.3, 3);
    const double u = oracles::uniform(gen, -2, 2);
    const ClosedOutcome commit = commitment_equilibrium(loss, c, u);
    const ClosedOutcome target = inflation_targeting_equilibrium(loss, c, u);
    CHECK(target.M_e == commit.M_e);
    CHECK(target.M_at(u) == commit.M_at(u));
    CHECK(target.p == commit.p);
    CHECK(target.y == commit.y);
    CHECK(target.expected_loss == commit.expected_loss);
  }
}

TEST_CASE("inflation targeting closes simple cases") {
  CHECK(inflation_targeting_equilibrium({1, 1}, 1, 0.7).M_at(0.7) ==
        doctest::Approx(-0.7).epsilon(1e-14));
  CHECK(inflation_targeting_equilibrium({1, 1}, 2, -0.2).M_at(-0.2) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(inflation_targeting_equilibrium({1, 1}, 2, -0.2).p == 0);
}

TEST_CASE("timing game: a fixed monetary rule hands the bias back") {
  const LossParams loss{1, 1};
  const ClosedOutcome out = timing_game(TimingRule::FixedMonetary, loss, 1, 0.2);
  CHECK(out.p == doctest::Approx(1).epsilon(1e-14));
  CHECK(out.y == 0);
  CHECK(out.g_e == doctest::Approx(1).epsilon(1e-14));

  // Backward induction oracle: at stage 3 the fiscal authority minimizes
  // its loss over g given m(u) = -u and expectations g_e. The reported g_e
  // must be the fixed point of that best response.
  const auto stage3 = [&](double g) {
    const double y = g - out.g_e;        // M = -u + g, M_e = g_e
    const double p = out.g_e + 1.0 * y;  // c = 1
    return p * p + loss.w_y * (y - loss.k_target) * (y - loss.k_target);
  };
  const double g_star = oracles::golden_min(stage3, -10, 10);
  CHECK(g_star == doctest::Approx(out.g_e).epsilon(1e-7));
}

TEST_CASE("timing game: compensating rule and fiscal norm restore commitment") {
  const LossParams loss{1, 1};
  for (const TimingRule rule :
       {TimingRule::DisciplineRule, TimingRule::FiscalNorm}) {
    const ClosedOutcome out = timing_game(rule, loss, 1, 0.2);
    CHECK(out.p == 0);
    CHECK(out.y == 0);
    CHECK(out.M_e == 0);
    CHECK(out.expected_loss ==
          expected_loss_closed(RegimeKind::Commitment, loss, 1, 0));
  }
}

TEST_CASE("closed-form expected losses") {
  CHECK(expected_loss_closed(RegimeKind::Discretion, {1, 1}, 1, 0.09) ==
        doctest::Approx(2).epsilon(1e-14));
  CHECK(expected_loss_closed(RegimeKind::Commitment, {1, 1}, 1, 0.09) ==
        doctest::Approx(1).epsilon(1e-14));
  CHECK(expected_loss_closed(RegimeKind::Discretion, {1, 0}, 1, 0.5) == 0);
  // Full stabilization: the variance never enters.
  CHECK(expected_loss_closed(RegimeKind::Discretion, {2, 1}, 0.5, 0) ==
        expected_loss_closed(RegimeKind::Discretion, {2, 1}, 0.5, 10));
}

TEST_CASE("regime ordering: discretion never beats commitment") {
  auto gen = oracles::rng(29);
  for (int i = 0; i < 200; ++i) {
    const LossParams loss{oracles::uniform(gen, 0.2, 3),
                          oracles::uniform(gen, 0, 2)};
    const double c = oracles::uniform(gen, 0.3, 3);
    const double discretion =
        expected_loss_closed(RegimeKind::Discretion, loss, c, 1);
    const double commitment =
        expected_loss_closed(RegimeKind::Commitment, loss, c, 1);
    CHECK(discretion >= commitment);
    if (loss.k_target == 0) {
      CHECK(discretion == commitment);
    } else {
      CHECK(discretion > commitment);
    }
  }
}

TEST_CASE("loss convention: p^2 + w_y (y - k)^2 with no half factor") {
  const ClosedOutcome out = discretion_equilibrium({2, 0.5}, 1, 0);
  // At the stabilized outcome y = 0, p = M_e: loss = M_e^2 + w k^2.
  const double direct = out.p * out.p + 2 * (0 - 0.5) * (0 - 0.5);
  CHECK(out.realized_loss_at(0.3) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(out.expected_loss == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("every regime fully stabilizes: M slope is -1") {
  const LossParams loss{1.3, 0.7};
  CHECK(discretion_equilibrium(loss, 2, 0.1).M_slope == -1);
  CHECK(commitment_equilibrium(loss, 2, 0.1).M_slope == -1);
  CHECK(inflation_targeting_equilibrium(loss, 2, 0.1).M_slope == -1);
  CHECK(timing_game(TimingRule::FixedMonetary, loss, 2, 0.1).M_slope == -1);
  CHECK(timing_game(TimingRule::DisciplineRule, loss, 2, 0.1).M_slope == -1);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(discretion_equilibrium({1, 1}, 0, 0), std::domain_error);
  CHECK_THROWS_AS(commitment_equilibrium({1, 1}, -1, 0), std::domain_error);
  CHECK_THROWS_AS(discretion_equilibrium({0, 1}, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(discretion_equilibrium({1, -0.5}, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_loss_closed(RegimeKind::Discretion, {1, 1}, 1, -1),
                  std::invalid_argument);
}
