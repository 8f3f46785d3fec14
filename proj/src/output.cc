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

#include "rosbid/output.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rosbid/config.h"
#include "rosbid/errors.h"
#include "rosbid/version.h"

namespace rosbid {
namespace {

using nlohmann::ordered_json;

template <class T>
ordered_json OrNull(const std::optional<T>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

template <class T>
std::string CsvOptional(const std::optional<T>& x) {
  if (!x) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return FormatReal(*x);
  } else {
    return std::to_string(*x);
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

std::string FormatReal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string SummaryJson(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  ordered_json j;
  j["version"] = kVersion;
  j["config_hash"] = ConfigHash(c);
  j["master_seed"] = c.seed;
  j["config"] = ordered_json::parse(CanonicalConfigJson(c));
  j["beta_hat"] = report.beta_hat;
  j["warnings"] = report.warnings;
  j["slope"] = OrNull(report.slope);
  ordered_json rows = ordered_json::array();
  for (const HorizonReport& r : report.horizons) {
    ordered_json h;
    h["T"] = r.horizon;
    h["trials"] = r.trials.size();
    h["oracle_method"] =
        r.oracle_method ? ordered_json(std::string(OracleMethodName(*r.oracle_method)))
                        : ordered_json("none");
    h["mean_regret"] = OrNull(r.mean_regret);
    h["std_regret"] = OrNull(r.std_regret);
    h["mean_positive_regret"] = OrNull(r.mean_positive_regret);
    h["mean_reward"] = r.mean_reward;
    h["mean_violation"] = r.mean_violation;
    h["max_violation"] = r.max_violation;
    h["mean_ros_deficit"] = r.mean_ros_deficit;
    h["ros_violations"] = r.ros_violations;
    h["budget_violations"] = r.budget_violations;
    h["mean_spend"] = r.mean_spend;
    h["mean_first_phase_length"] = OrNull(r.mean_first_phase);
    h["max_first_phase_length"] = OrNull(r.max_first_phase);
    h["first_phase_below_horizon"] = r.first_phase_below_horizon;
    h["max_mu"] = r.max_mu;
    rows.push_back(std::move(h));
  }
  j["horizons"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string TrialsCsv(const HorizonReport& r, PolicyKind policy) {
  std::ostringstream out;
  out << kTrialsCsvHeader << "\n";
  for (size_t i = 0; i < r.trials.size(); ++i) {
    const TrialMetrics& m = r.trials[i];
    out << i << "," << r.seeds[i] << "," << r.horizon << ","
        << PolicyName(policy) << "," << FormatReal(m.reward) << ","
        << CsvOptional(m.opt_value) << "," << CsvOptional(m.regret_sample)
        << "," << FormatReal(m.ros_slack) << "," << FormatReal(m.total_spend)
        << "," << CsvOptional(m.first_phase_length) << ","
        << FormatReal(m.max_mu) << "," << CsvOptional(m.stopping_time)
        << "\n";
  }
  return out.str();
}

std::string TrajectoryCsv(const std::vector<StepOutcome>& trajectory) {
  std::ostringstream out;
  out << kTrajectoryCsvHeader << "\n";
  for (const StepOutcome& s : trajectory) {
    out << s.t << "," << FormatReal(s.value) << "," << FormatReal(s.bid)
        << "," << FormatReal(s.allocation) << "," << FormatReal(s.price)
        << "," << FormatReal(s.g) << "," << FormatReal(s.g_prime) << ","
        << FormatReal(s.lambda) << "," << FormatReal(s.mu) << ","
        << FormatReal(s.budget_remaining) << "\n";
  }
  return out.str();
}

std::string SweepCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const HorizonReport& r : report.horizons) {
    out << r.horizon << "," << CsvOptional(r.mean_regret) << ","
        << CsvOptional(r.std_regret) << "," << FormatReal(r.mean_violation)
        << "," << FormatReal(r.max_violation) << ","
        << CsvOptional(report.slope) << "\n";
  }
  return out.str();
}

void WriteReport(const ExperimentReport& report,
                 const std::filesystem::path& dir, bool sweep) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  WriteFile(dir / "summary.json", SummaryJson(report));
  for (const HorizonReport& r : report.horizons) {
    const std::string t = std::to_string(r.horizon);
    WriteFile(dir / ("trials_T" + t + ".csv"),
              TrialsCsv(r, report.config.policy));
    for (size_t i = 0; i < r.trajectories.size(); ++i) {
      WriteFile(dir / ("traj_trial" + std::to_string(i) + "_T" + t + ".csv"),
                TrajectoryCsv(r.trajectories[i]));
    }
  }
  if (sweep) WriteFile(dir / "sweep.csv", SweepCsv(report));
}

void PrintReport(const ExperimentReport& report, std::ostream& out) {
  const ExperimentConfig& c = report.config;
  out << "policy " << PolicyName(c.policy) << ", "
      << DistributionName(c.distribution) << ", seed " << c.seed
      << ", beta_hat " << report.beta_hat << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  for (const HorizonReport& r : report.horizons) {
    out << "T=" << r.horizon << " trials=" << r.trials.size();
    if (r.mean_regret) {
      out << " regret=" << *r.mean_regret << "+-" << *r.std_regret << " ("
          << OracleMethodName(*r.oracle_method) << ")";
    }
    out << " violation(mean/max)=" << r.mean_violation << "/"
        << r.max_violation << " ros_violations=" << r.ros_violations;
    if (c.rho) out << " budget_violations=" << r.budget_violations;
    if (r.mean_first_phase) out << " mean_K=" << *r.mean_first_phase;
    out << "\n";
  }
  if (report.slope) out << "log-log regret slope " << *report.slope << "\n";
}

}  // namespace rosbid
