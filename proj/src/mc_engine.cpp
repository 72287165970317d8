#include <emulab/mc_engine.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include <emulab/counter_rng.hpp>

namespace emulab {

namespace {

constexpr Scalar kTwoPi = 6.283185307179586476925287;
constexpr Scalar kSqrt3 = 1.7320508075688772935274463;
constexpr Scalar kOracleTol = 1e-6;

// Fixed block size: the reduction shape must not depend on worker count.
constexpr std::uint64_t kBlockSize = 8192;

// Stream salts: two uniforms per Box-Muller pair.
constexpr std::uint64_t kStreamCommon = 0;
constexpr std::uint64_t kStreamAsym = 2;

Scalar standard_variate(ShockFamily family, std::uint64_t seed,
                        std::uint64_t stream_base, std::uint64_t index) {
  const Scalar u1 = uniform01(seed, stream_base, index);
  if (family == ShockFamily::Gaussian) {
    const Scalar u2 = uniform01(seed, stream_base + 1, index);
    return std::sqrt(-2 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
  // Symmetric uniform with unit variance.
  return kSqrt3 * (2 * u1 - 1);
}

struct KahanSum {
  double sum = 0;
  double comp = 0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct BlockSums {
  double loss1 = 0, loss2 = 0;
  double sq1 = 0, sq2 = 0;
  double pooled = 0, pooled_sq = 0;
  double abs_y = 0, p = 0;
};

std::string format_message(const char* fmt, Scalar a, Scalar b, Scalar c) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

// Golden-section minimizer for the oracle path; derivative-free so it
// shares nothing with the closed forms it checks.
template <typename F>
Scalar golden_min(const F& f, Scalar lo, Scalar hi) {
  const Scalar ratio = (std::sqrt(Scalar(5)) - 1) / 2;
  Scalar a = lo, b = hi;
  Scalar x1 = b - ratio * (b - a);
  Scalar x2 = a + ratio * (b - a);
  Scalar f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-11) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2;
}

struct RegimeConfig {
  UnionRule rule;
  Scalar penalty = 0;
  bool cooperative = false;
};

RegimeConfig regime_config(const UnionScenario& scenario, Regime regime) {
  switch (regime) {
    case Regime::Nash:
      return {scenario.rule, 0, false};
    case Regime::Autonomy:
      return {UnionRule{0}, 0, false};
    case Regime::StrictRule:
      return {UnionRule{1}, 0, false};
    case Regime::Sanctioned:
      return {UnionRule{0}, scenario.effective_penalty(), false};
    case Regime::Cooperative:
      return {UnionRule{0.5}, 0, true};
  }
  throw std::invalid_argument("unknown regime");
}

// Numerically re-derive the draw's equilibrium and compare with the
// analytic outcome.
void oracle_check(const UnionScenario& scenario, Regime regime,
                  const UnionShock& shock, const UnionOutcome& outcome) {
  const RegimeConfig cfg = regime_config(scenario, regime);
  const LossParams& loss = scenario.loss;
  const Scalar c = scenario.c;

  if (cfg.cooperative) {
    // Coordinate descent on the joint loss around the reported split.
    const auto joint = [&](const FiscalProfile& g) {
      return country_loss(cfg.rule, loss, c, shock, g, outcome.Ge1, 1) +
             country_loss(cfg.rule, loss, c, shock, g, outcome.Ge2, 2);
    };
    FiscalProfile g = outcome.profile;
    for (int sweep_i = 0; sweep_i < 4; ++sweep_i) {
      g.g1 = golden_min(
          [&](Scalar v) {
            FiscalProfile trial = g;
            trial.g1 = v;
            return joint(trial);
          },
          g.g1 - 5, g.g1 + 5);
      g.g2 = golden_min(
          [&](Scalar v) {
            FiscalProfile trial = g;
            trial.g2 = v;
            return joint(trial);
          },
          g.g2 - 5, g.g2 + 5);
    }
    if (joint(g) < joint(outcome.profile) - kOracleTol) {
      throw OracleDisagreement(format_message(
          "oracle: cooperative joint loss %.12g improves on analytic %.12g "
          "(lambda = %g)",
          joint(g), joint(outcome.profile), cfg.rule.lambda));
    }
    return;
  }

  for (int country = 1; country <= 2; ++country) {
    const Scalar Ge = country == 1 ? outcome.Ge1 : outcome.Ge2;
    const Scalar own =
        country == 1 ? outcome.profile.g1 : outcome.profile.g2;
    const Scalar base = country_loss(cfg.rule, loss, c, shock,
                                     outcome.profile, Ge, country,
                                     cfg.penalty);
    const auto own_loss = [&](Scalar v) {
      FiscalProfile trial = outcome.profile;
      (country == 1 ? trial.g1 : trial.g2) = v;
      return country_loss(cfg.rule, loss, c, shock, trial, Ge, country,
                          cfg.penalty);
    };
    if (cfg.rule.neutralizing()) {
      // Flat objective: any deviation must leave the loss unchanged.
      for (const Scalar step : {-3.0, -0.7, 1.3, 4.0}) {
        if (std::abs(own_loss(own + step) - base) > kOracleTol) {
          throw OracleDisagreement(
              "oracle: own loss is not flat under the lambda = 1 rule");
        }
      }
      continue;
    }
    const Scalar best = own_loss(golden_min(own_loss, own - 5, own + 5));
    if (best < base - kOracleTol) {
      throw OracleDisagreement(format_message(
          "oracle: country loss %.12g improves on analytic %.12g "
          "(deviation gain %.3g)",
          best, base, base - best));
    }
  }
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

void ShockDistribution::validate() const {
  if (!std::isfinite(sigma_u) || sigma_u < 0 || !std::isfinite(sigma_a) ||
      sigma_a < 0) {
    throw std::invalid_argument(
        "ShockDistribution: sigma_u and sigma_a must be finite and >= 0");
  }
}

UnionShock draw_shocks(const ShockDistribution& dist, std::uint64_t seed,
                       std::uint64_t index) {
  dist.validate();
  return {dist.sigma_u * standard_variate(dist.family, seed, kStreamCommon, index),
          dist.sigma_a * standard_variate(dist.family, seed, kStreamAsym, index)};
}

Scalar UnionScenario::effective_penalty() const {
  return sanction_t ? *sanction_t : optimal_penalty(loss, c);
}

void UnionScenario::validate() const {
  loss.validate();
  if (!std::isfinite(c) || !(c > 0)) {
    throw std::domain_error("UnionScenario: c must be finite and > 0");
  }
  if (!std::isfinite(rule.lambda)) {
    throw std::invalid_argument("UnionScenario: lambda must be finite");
  }
  if (sanction_t && !std::isfinite(*sanction_t)) {
    throw std::invalid_argument("UnionScenario: sanction t must be finite");
  }
  shocks.validate();
}

std::string scenario_digest(const UnionScenario& scenario) {
  char canon[512];
  std::snprintf(canon, sizeof(canon),
                "w_y=%.17g;k_target=%.17g;c=%.17g;lambda=%.17g;t=%s;"
                "family=%s;sigma_u=%.17g;sigma_a=%.17g",
                scenario.loss.w_y, scenario.loss.k_target, scenario.c,
                scenario.rule.lambda,
                scenario.sanction_t
                    ? format_message("%.17g", *scenario.sanction_t, 0, 0).c_str()
                    : "auto",
                scenario.shocks.family == ShockFamily::Gaussian ? "gaussian"
                                                                : "uniform",
                scenario.shocks.sigma_u, scenario.shocks.sigma_a);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a(canon)));
  return hex;
}

const char* regime_label(Regime regime) {
  switch (regime) {
    case Regime::Autonomy:
      return "autonomy";
    case Regime::StrictRule:
      return "strict";
    case Regime::Sanctioned:
      return "sanctioned";
    case Regime::Cooperative:
      return "cooperative";
    case Regime::Nash:
      return "nash";
  }
  return "?";
}

Regime parse_regime(const std::string& label) {
  if (label == "autonomy") return Regime::Autonomy;
  if (label == "strict") return Regime::StrictRule;
  if (label == "sanctioned") return Regime::Sanctioned;
  if (label == "cooperative") return Regime::Cooperative;
  if (label == "nash") return Regime::Nash;
  throw std::invalid_argument(
      "unknown regime '" + label +
      "' (expected autonomy|strict|sanctioned|cooperative|nash)");
}

NoEquilibriumError::NoEquilibriumError(Scalar desired_G_sum_,
                                       Scalar feasible_G_sum_, Scalar lambda_,
                                       Scalar penalty_)
    : std::runtime_error(
          std::isfinite(desired_G_sum_)
              ? format_message("no Nash equilibrium: the fiscal authorities "
                               "jointly require G1+G2 = %.6g but the lambda "
                               "= %.6g rule admits only G1+G2 = %.6g",
                               desired_G_sum_, lambda_, feasible_G_sum_)
              : format_message("no Nash equilibrium: the sanction (t = %.6g) "
                               "gives each fiscal authority an unbounded "
                               "incentive under the lambda = %.6g rule",
                               penalty_, lambda_, 0)),
      desired_G_sum(desired_G_sum_),
      feasible_G_sum(feasible_G_sum_),
      lambda(lambda_),
      penalty(penalty_) {}

OracleDisagreement::OracleDisagreement(const std::string& what_)
    : std::runtime_error(what_) {}

UnionOutcome regime_outcome(const UnionScenario& scenario, Regime regime,
                            const UnionShock& shock) {
  const RegimeConfig cfg = regime_config(scenario, regime);
  if (cfg.cooperative) {
    return cooperative_equilibrium(cfg.rule, scenario.loss, scenario.c, shock);
  }
  return union_nash(cfg.rule, scenario.loss, scenario.c, shock, cfg.penalty);
}

SimulationReport simulate(const UnionScenario& scenario, Regime regime,
                          const SimulateOptions& options) {
  scenario.validate();
  if (options.n_draws < 1) {
    throw std::invalid_argument("simulate: n_draws must be >= 1");
  }

  // Equilibrium existence does not depend on the shock draw: probe once so
  // a pathological regime fails loudly instead of producing numbers.
  {
    const UnionOutcome probe = regime_outcome(scenario, regime, UnionShock{});
    if (probe.status == EquilibriumStatus::NoEquilibrium) {
      const RegimeConfig cfg = regime_config(scenario, regime);
      throw NoEquilibriumError(probe.desired_G_sum, probe.feasible_G_sum,
                               cfg.rule.lambda, cfg.penalty);
    }
  }

  const std::uint64_t n = options.n_draws;
  const std::uint64_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> partials(n_blocks);

  std::atomic<std::uint64_t> next_block{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto run_block = [&](std::uint64_t block) {
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    KahanSum loss1, loss2, sq1, sq2, pooled, pooled_sq, abs_y, p_acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      const UnionShock shock = draw_shocks(scenario.shocks, options.seed, i);
      const UnionOutcome out = regime_outcome(scenario, regime, shock);
      if (options.oracle) {
        oracle_check(scenario, regime, shock, out);
      }
      loss1.add(out.loss1);
      loss2.add(out.loss2);
      sq1.add(out.loss1 * out.loss1);
      sq2.add(out.loss2 * out.loss2);
      const double pair_mean = (out.loss1 + out.loss2) / 2;
      pooled.add(pair_mean);
      pooled_sq.add(pair_mean * pair_mean);
      abs_y.add((std::abs(out.y1) + std::abs(out.y2)) / 2);
      p_acc.add((out.p1 + out.p2) / 2);
    }
    partials[block] = {loss1.sum, loss2.sum, sq1.sum,      sq2.sum,
                       pooled.sum, pooled_sq.sum, abs_y.sum, p_acc.sum};
  };

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t block = next_block.fetch_add(1);
      if (block >= n_blocks) return;
      try {
        run_block(block);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned n_workers = options.workers > 0
                           ? static_cast<unsigned>(options.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(
      std::min<std::uint64_t>(n_workers, n_blocks));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic reduction: fold block sums in index order.
  KahanSum loss1, loss2, sq1, sq2, pooled, pooled_sq, abs_y, p_acc;
  for (const BlockSums& b : partials) {
    loss1.add(b.loss1);
    loss2.add(b.loss2);
    sq1.add(b.sq1);
    sq2.add(b.sq2);
    pooled.add(b.pooled);
    pooled_sq.add(b.pooled_sq);
    abs_y.add(b.abs_y);
    p_acc.add(b.p);
  }

  const double dn = static_cast<double>(n);
  const auto standard_error = [&](double sum, double sum_sq) {
    if (n < 2) return 0.0;
    const double mean = sum / dn;
    const double variance =
        std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1));
    return std::sqrt(variance / dn);
  };

  SimulationReport report;
  report.regime = regime_label(regime);
  report.n_draws = n;
  report.seed = options.seed;
  report.mean_loss_1 = loss1.sum / dn;
  report.mean_loss_2 = loss2.sum / dn;
  report.se_1 = standard_error(loss1.sum, sq1.sum);
  report.se_2 = standard_error(loss2.sum, sq2.sum);
  report.mean_abs_y = abs_y.sum / dn;
  report.mean_p = p_acc.sum / dn;
  report.scenario_digest = scenario_digest(scenario);
  report.mean_loss_pooled = pooled.sum / dn;
  report.se_pooled = standard_error(pooled.sum, pooled_sq.sum);
  return report;
}

std::vector<SweepRow> sweep(const UnionScenario& scenario,
                            const std::string& axis,
                            const std::vector<Scalar>& values,
                            const std::vector<Regime>& regimes,
                            const SimulateOptions& options) {
  std::function<void(UnionScenario&, Scalar)> apply;
  if (axis == "sigma_a") {
    apply = [](UnionScenario& s, Scalar v) { s.shocks.sigma_a = v; };
  } else if (axis == "lambda") {
    apply = [](UnionScenario& s, Scalar v) { s.rule.lambda = v; };
  } else if (axis == "k_target") {
    apply = [](UnionScenario& s, Scalar v) { s.loss.k_target = v; };
  } else if (axis == "w_y") {
    apply = [](UnionScenario& s, Scalar v) { s.loss.w_y = v; };
  } else if (axis == "c") {
    apply = [](UnionScenario& s, Scalar v) { s.c = v; };
  } else if (axis == "t") {
    apply = [](UnionScenario& s, Scalar v) { s.sanction_t = v; };
  } else {
    throw std::invalid_argument(
        "unknown sweep axis '" + axis +
        "' (expected sigma_a|lambda|k_target|w_y|c|t)");
  }
  for (const Scalar v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("sweep values must be finite");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(values.size() * regimes.size());
  for (const Scalar value : values) {
    UnionScenario point = scenario;
    apply(point, value);
    for (const Regime regime : regimes) {
      const SimulationReport report = simulate(point, regime, options);
      rows.push_back({axis, value, report.regime, report.mean_loss_pooled,
                      report.se_pooled, report.mean_p, report.mean_abs_y});
    }
  }
  return rows;
}

}  // namespace emulab
