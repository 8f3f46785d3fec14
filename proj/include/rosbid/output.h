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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "rosbid/experiment.h"

namespace rosbid {

// Column order is part of the output contract.
inline constexpr char kTrialsCsvHeader[] =
    "trial,seed,T,policy,reward,opt_value,regret,ros_slack,total_spend,K,"
    "max_mu,stopping_time";
inline constexpr char kTrajectoryCsvHeader[] =
    "t,v,bid,x,p,g,g_prime,lambda,mu,budget_remaining";
inline constexpr char kSweepCsvHeader[] =
    "T,mean_regret,std_regret,mean_violation,max_violation,slope";

// 17 significant digits; round-trips exactly.
std::string FormatReal(double x);

std::string SummaryJson(const ExperimentReport& report);
std::string TrialsCsv(const HorizonReport& horizon, PolicyKind policy);
std::string TrajectoryCsv(const std::vector<StepOutcome>& trajectory);
std::string SweepCsv(const ExperimentReport& report);

// Writes summary.json, trials_T{T}.csv, optional traj_trial{i}_T{T}.csv
// and, when `sweep`, sweep.csv. Creates `dir` if needed.
void WriteReport(const ExperimentReport& report,
                 const std::filesystem::path& dir, bool sweep);

// Short human-readable digest.
void PrintReport(const ExperimentReport& report, std::ostream& out);

}  // namespace rosbid
