// Copyright 2026 Google LLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rosbid/experiment.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal/parallel.h"
#include "rosbid/errors.h"
#include "rosbid/seed.h"

namespace rosbid {
namespace {

// Stream index reserved for the beta estimate; trials use 0, 1, 2, ...
constexpr uint64_t kBetaStream = 0xbe7a5eedULL;

void Aggregate(const ExperimentConfig& config, HorizonReport& r) {
  const double n = static_cast<double>(r.trials.size());
  const double budget =
      config.rho ? *config.rho * static_cast<double>(r.horizon) : 0.0;
  double regret = 0.0, regret_plus = 0.0, k_total = 0.0;
  bool have_regret = true, have_k = false;
  for (const TrialMetrics& m : r.trials) {
    r.mean_reward += m.reward;
    r.mean_violation += m.ros_violation();
    r.max_violation = std::max(r.max_violation, m.ros_violation());
    r.mean_ros_deficit += -m.ros_slack;
    r.mean_spend += m.total_spend;
    r.max_mu = std::max(r.max_mu, m.max_mu);
    if (m.ros_slack < 0.0) ++r.ros_violations;
    if (config.rho && m.total_spend > budget) ++r.budget_violations;
    if (m.regret_sample) {
      regret += *m.regret_sample;
      regret_plus += std::max(0.0, *m.regret_sample);
    } else {
      have_regret = false;
    }
    if (m.first_phase_length) {
      have_k = true;
      k_total += static_cast<double>(*m.first_phase_length);
      r.max_first_phase =
          std::max(r.max_first_phase.value_or(0), *m.first_phase_length);
      if (*m.first_phase_length < r.horizon) ++r.first_phase_below_horizon;
    }
  }
  r.mean_reward /= n;
  r.mean_violation /= n;
  r.mean_ros_deficit /= n;
  r.mean_spend /= n;
  if (have_k) r.mean_first_phase = k_total / n;
  if (have_regret && !r.trials.empty()) {
    const double mean = regret / n;
    double ss = 0.0;
    for (const TrialMetrics& m : r.trials) {
      ss += (*m.regret_sample - mean) * (*m.regret_sample - mean);
    }
    r.mean_regret = mean;
    r.std_regret = r.trials.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    r.mean_positive_regret = regret_plus / n;
    r.oracle_method = r.trials.front().oracle_method;
  }
}

}  // namespace

PolicyOptions ExperimentConfig::policy_options() const {
  PolicyOptions options;
  options.rho = rho;
  options.alpha_override = alpha_override;
  options.eta_override = eta_override;
  options.bid_cap = bid_cap;
  options.intermingled = intermingled;
  return options;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.horizons.empty()) throw ConfigError("horizons must be non-empty");
  for (size_t i = 0; i < config.horizons.size(); ++i) {
    if (config.horizons[i] < 1) throw ConfigError("horizons must be >= 1");
    if (i > 0 && config.horizons[i] <= config.horizons[i - 1]) {
      throw ConfigError("horizons must be strictly ascending");
    }
  }
  if (!(config.target_ros > 0.0 && std::isfinite(config.target_ros))) {
    throw ConfigError("target_ros must be positive");
  }
  ValidateDistribution(config.distribution);
  if (ValueSupportMax(config.distribution) / config.target_ros > 1.0) {
    throw ConfigError("values divided by target_ros must stay within [0, 1]");
  }
  if (config.beta_samples < 1) throw ConfigError("beta_samples must be >= 1");
  if (!(config.bid_cap > 0.0)) throw ConfigError("bid_cap must be positive");
  // Policy-level checks (rho presence, override signs).
  InitialPolicyState(config.policy, config.horizons.front(),
                     config.policy_options());
}

uint64_t TrialSeed(uint64_t master_seed, int64_t trial) {
  return DeriveSeed(master_seed, static_cast<uint64_t>(trial));
}

std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() < 2 || x.size() != y.size()) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ExperimentReport RunExperiment(const ExperimentConfig& config, int threads) {
  ValidateConfig(config);
  ExperimentReport report;
  report.config = config;
  // Measured on the normalized values the policy actually sees.
  report.beta_hat =
      EstimateBeta(config.distribution, config.beta_samples,
                   DeriveSeed(config.seed, kBetaStream), config.target_ros);
  if (report.beta_hat < kLowBetaWarning) {
    std::ostringstream msg;
    msg << "estimated beta " << report.beta_hat << " is below "
        << kLowBetaWarning << "; buffer phases may not finish";
    report.warnings.push_back(msg.str());
  }

  const PolicyOptions options = config.policy_options();
  const int64_t n = config.trials;
  for (int64_t horizon : config.horizons) {
    HorizonReport r;
    r.horizon = horizon;
    r.seeds.resize(static_cast<size_t>(n));
    r.trials.resize(static_cast<size_t>(n));
    if (config.emit_trajectories) r.trajectories.resize(static_cast<size_t>(n));
    internal::ParallelFor(n, threads, [&](int64_t i) {
      TrialSpec spec;
      spec.kind = config.policy;
      spec.policy = options;
      spec.distribution = config.distribution;
      spec.horizon = horizon;
      spec.seed = TrialSeed(config.seed, i);
      spec.target_ros = config.target_ros;
      spec.oracle = config.oracle;
      spec.record_trajectory = config.emit_trajectories;
      TrialResult result = RunTrial(spec);
      const auto k = static_cast<size_t>(i);
      r.seeds[k] = spec.seed;
      r.trials[k] = result.metrics;
      if (config.emit_trajectories) {
        r.trajectories[k] = std::move(result.trajectory);
      }
    });
    Aggregate(config, r);
    report.horizons.push_back(std::move(r));
  }

  std::vector<double> xs, ys;
  bool complete = true;
  for (const HorizonReport& r : report.horizons) {
    if (!r.mean_positive_regret) complete = false;
    xs.push_back(static_cast<double>(r.horizon));
    ys.push_back(r.mean_positive_regret.value_or(0.0));
  }
  if (complete) report.slope = LogLogSlope(xs, ys);
  return report;
}

}  // namespace rosbid
