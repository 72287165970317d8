#pragma once

// Seeded Monte Carlo over union shocks. Draws are a pure function of
// (seed, index), blocks of draws are accumulated with compensated
// summation, and block sums are reduced in index order, so a report is
// bit-identical across runs and across worker counts.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <emulab/sanctions.hpp>

namespace emulab {

enum class ShockFamily { Gaussian, UniformSymmetric };

struct ShockDistribution {
  Scalar sigma_u = 0;  // std. dev. of the common component
  Scalar sigma_a = 0;  // std. dev. of the asymmetric component
  ShockFamily family = ShockFamily::Gaussian;

  void validate() const;
};

// Deterministic function of (seed, index); both components zero-mean and
// mutually independent.
UnionShock draw_shocks(const ShockDistribution& dist, std::uint64_t seed,
                       std::uint64_t index);

// The numeric scenario consumed by the engine (the file-level scenario in
// scenario.hpp resolves to one of these).
struct UnionScenario {
  LossParams loss{1.0, 1.0};
  Scalar c = 1.0;
  UnionRule rule{};                 // lambda used by Regime::Nash
  std::optional<Scalar> sanction_t;  // Sanctioned penalty; empty -> t*
  ShockDistribution shocks{0.3, 0.3, ShockFamily::Gaussian};

  Scalar effective_penalty() const;
  void validate() const;
};

// Canonical content hash of the resolved model parameters; stable across
// runs and independent of file formatting.
std::string scenario_digest(const UnionScenario& scenario);

const char* regime_label(Regime regime);
Regime parse_regime(const std::string& label);  // throws std::invalid_argument

struct SimulationReport {
  std::string regime;
  std::uint64_t n_draws = 0;
  std::uint64_t seed = 0;
  Scalar mean_loss_1 = 0, mean_loss_2 = 0;
  Scalar se_1 = 0, se_2 = 0;
  Scalar mean_abs_y = 0;  // mean over draws of (|y1| + |y2|) / 2
  Scalar mean_p = 0;      // mean over draws of (p1 + p2) / 2
  std::string scenario_digest;
  // Pooled over both countries; feeds the sweep table.
  Scalar mean_loss_pooled = 0;
  Scalar se_pooled = 0;
};

struct SimulateOptions {
  std::uint64_t n_draws = 100000;
  std::uint64_t seed = 42;
  int workers = 0;      // 0 -> hardware concurrency
  bool oracle = false;  // re-derive each draw's equilibrium numerically
};

// Thrown when the requested regime has no Nash equilibrium; carries the
// incompatibility witness so the failure is never a silent number.
struct NoEquilibriumError : std::runtime_error {
  NoEquilibriumError(Scalar desired_G_sum_, Scalar feasible_G_sum_,
                     Scalar lambda_, Scalar penalty_);
  Scalar desired_G_sum;
  Scalar feasible_G_sum;
  Scalar lambda;
  Scalar penalty;
};

// Thrown in oracle mode when the numerical minimizer beats or contradicts
// the analytic equilibrium beyond tolerance: an implementation bug, never
// ignored.
struct OracleDisagreement : std::runtime_error {
  explicit OracleDisagreement(const std::string& what_);
};

// Equilibrium outcome of `regime` for one shock draw (the analytic path
// that simulate() evaluates per draw).
UnionOutcome regime_outcome(const UnionScenario& scenario, Regime regime,
                            const UnionShock& shock);

SimulationReport simulate(const UnionScenario& scenario, Regime regime,
                          const SimulateOptions& options);

struct SweepRow {
  std::string axis;
  Scalar value;
  std::string regime;
  Scalar mean_loss;  // pooled over the two countries
  Scalar se;
  Scalar mean_p;
  Scalar mean_abs_y;
};

// One row per (value, regime), every cell simulated with the same seed so
// regimes face common random numbers. Valid axes: sigma_a, lambda,
// k_target, w_y, c, t.
std::vector<SweepRow> sweep(const UnionScenario& scenario,
                            const std::string& axis,
                            const std::vector<Scalar>& values,
                            const std::vector<Regime>& regimes,
                            const SimulateOptions& options);

}  // namespace emulab
