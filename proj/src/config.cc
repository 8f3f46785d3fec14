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

#include "rosbid/config.h"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void Fail(const YAML::Node& node, const std::string& msg) const {
    const YAML::Mark mark = node.Mark();
    std::ostringstream out;
    out << source_;
    if (!mark.is_null()) out << ":" << mark.line + 1 << ":" << mark.column + 1;
    out << ": " << msg;
    throw ConfigError(out.str());
  }

  // Rejects keys outside `allowed`.
  void CheckKeys(const YAML::Node& map, const std::set<std::string>& allowed,
                 const std::string& where) const {
    if (!map.IsMap()) Fail(map, where + " must be a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.contains(key)) {
        Fail(kv.first, "unknown key '" + key + "' in " + where);
      }
    }
  }

  template <class T>
  T Get(const YAML::Node& node, const std::string& key,
        const char* type_name) const {
    if (!node.IsScalar()) Fail(node, key + " must be " + type_name);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      Fail(node, key + " must be " + type_name);
    }
  }

  double Real(const YAML::Node& node, const std::string& key) const {
    return Get<double>(node, key, "a number");
  }
  int64_t Int(const YAML::Node& node, const std::string& key) const {
    return Get<int64_t>(node, key, "an integer");
  }
  bool Bool(const YAML::Node& node, const std::string& key) const {
    return Get<bool>(node, key, "true or false");
  }
  std::string String(const YAML::Node& node, const std::string& key) const {
    return Get<std::string>(node, key, "a string");
  }

 private:
  std::string source_;
};

Distribution ParseDistribution(const Reader& r, const YAML::Node& node) {
  if (!node.IsMap()) r.Fail(node, "distribution must be a mapping");
  if (!node["kind"]) r.Fail(node, "distribution.kind is required");
  const std::string kind = r.String(node["kind"], "distribution.kind");
  auto real = [&](const char* key, double fallback) {
    const YAML::Node v = node[key];
    return v ? r.Real(v, std::string("distribution.") + key) : fallback;
  };
  if (kind == "uniform_second_price") {
    r.CheckKeys(node, {"kind", "v_lo", "v_hi", "d_lo", "d_hi"}, "distribution");
    return UniformSecondPrice{real("v_lo", 0), real("v_hi", 1),
                              real("d_lo", 0), real("d_hi", 1)};
  }
  if (kind == "beta_second_price") {
    r.CheckKeys(node, {"kind", "a_v", "b_v", "a_d", "b_d"}, "distribution");
    return BetaSecondPrice{real("a_v", 1), real("b_v", 1), real("a_d", 1),
                           real("b_d", 1)};
  }
  if (kind == "correlated_second_price") {
    r.CheckKeys(node, {"kind", "v_lo", "v_hi", "margin", "noise"},
                "distribution");
    return CorrelatedSecondPrice{real("v_lo", 0), real("v_hi", 1),
                                 real("margin", 0), real("noise", 0)};
  }
  if (kind == "linear_allocation_uniform") {
    r.CheckKeys(node, {"kind", "v_lo", "v_hi"}, "distribution");
    return LinearAllocationUniform{real("v_lo", 0), real("v_hi", 1)};
  }
  r.Fail(node["kind"], "unknown distribution kind '" + kind + "'");
}

json DistributionJson(const Distribution& dist) {
  json j;
  j["kind"] = DistributionName(dist);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, UniformSecondPrice>) {
          j["v_lo"] = d.v_lo;
          j["v_hi"] = d.v_hi;
          j["d_lo"] = d.d_lo;
          j["d_hi"] = d.d_hi;
        } else if constexpr (std::is_same_v<T, BetaSecondPrice>) {
          j["a_v"] = d.a_v;
          j["b_v"] = d.b_v;
          j["a_d"] = d.a_d;
          j["b_d"] = d.b_d;
        } else if constexpr (std::is_same_v<T, CorrelatedSecondPrice>) {
          j["v_lo"] = d.v_lo;
          j["v_hi"] = d.v_hi;
          j["margin"] = d.margin;
          j["noise"] = d.noise;
        } else {
          j["v_lo"] = d.v_lo;
          j["v_hi"] = d.v_hi;
        }
      },
      dist);
  return j;
}

json OptionalJson(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

}  // namespace

std::string_view OracleModeName(OracleMode mode) {
  return mode == OracleMode::kAuto ? "auto" : "none";
}

ExperimentConfig ParseConfig(std::string_view text,
                             std::string_view source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source_name << ":" << e.mark.line + 1 << ":" << e.mark.column + 1
        << ": " << e.msg;
    throw ConfigError(out.str());
  }
  if (!root.IsMap()) r.Fail(root, "top level must be a mapping");
  r.CheckKeys(root,
              {"policy", "distribution", "horizons", "trials", "rho",
               "target_ros", "seed", "alpha_override", "eta_override",
               "bid_cap", "intermingled", "oracle", "beta_samples",
               "output_dir", "emit_trajectories"},
              "config");

  ExperimentConfig c;
  if (!root["policy"]) r.Fail(root, "policy is required");
  {
    const std::string name = r.String(root["policy"], "policy");
    const auto kind = ParsePolicyKind(name);
    if (!kind) r.Fail(root["policy"], "unknown policy '" + name + "'");
    c.policy = *kind;
  }
  if (!root["distribution"]) r.Fail(root, "distribution is required");
  c.distribution = ParseDistribution(r, root["distribution"]);
  if (const YAML::Node h = root["horizons"]) {
    c.horizons.clear();
    if (h.IsScalar()) {
      c.horizons.push_back(r.Int(h, "horizons"));
    } else if (h.IsSequence()) {
      for (const auto& e : h) c.horizons.push_back(r.Int(e, "horizons"));
    } else {
      r.Fail(h, "horizons must be an integer or a list of integers");
    }
    for (size_t i = 0; i < c.horizons.size(); ++i) {
      if (c.horizons[i] < 1 || (i > 0 && c.horizons[i] <= c.horizons[i - 1])) {
        r.Fail(h, "horizons must be positive and strictly ascending");
      }
    }
  }
  if (const YAML::Node n = root["trials"]) {
    c.trials = r.Int(n, "trials");
    if (c.trials < 1) r.Fail(n, "trials must be >= 1");
  }
  if (const YAML::Node n = root["rho"]) {
    if (!n.IsNull()) {
      c.rho = r.Real(n, "rho");
      if (!(*c.rho > 0.0)) r.Fail(n, "rho must be positive");
    }
  }
  if (const YAML::Node n = root["target_ros"]) {
    c.target_ros = r.Real(n, "target_ros");
    if (!(c.target_ros > 0.0)) r.Fail(n, "target_ros must be positive");
  }
  if (const YAML::Node n = root["seed"]) {
    c.seed = r.Get<uint64_t>(n, "seed", "an unsigned 64-bit integer");
  }
  if (const YAML::Node n = root["alpha_override"]) {
    if (!n.IsNull()) c.alpha_override = r.Real(n, "alpha_override");
  }
  if (const YAML::Node n = root["eta_override"]) {
    if (!n.IsNull()) c.eta_override = r.Real(n, "eta_override");
  }
  if (const YAML::Node n = root["bid_cap"]) c.bid_cap = r.Real(n, "bid_cap");
  if (const YAML::Node n = root["intermingled"]) {
    c.intermingled = r.Bool(n, "intermingled");
  }
  if (const YAML::Node n = root["oracle"]) {
    const std::string mode = r.String(n, "oracle");
    if (mode == "auto") {
      c.oracle = OracleMode::kAuto;
    } else if (mode == "none") {
      c.oracle = OracleMode::kNone;
    } else {
      r.Fail(n, "oracle must be 'auto' or 'none'");
    }
  }
  if (const YAML::Node n = root["beta_samples"]) {
    c.beta_samples = r.Int(n, "beta_samples");
  }
  if (const YAML::Node n = root["output_dir"]) {
    c.output_dir = r.String(n, "output_dir");
  }
  if (const YAML::Node n = root["emit_trajectories"]) {
    c.emit_trajectories = r.Bool(n, "emit_trajectories");
  }

  try {
    ValidateConfig(c);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path);
}

void ApplyEnvironmentOverrides(ExperimentConfig& config) {
  const char* raw = std::getenv("ROSBID_SEED");
  if (raw == nullptr) return;
  const std::string_view s(raw);
  uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("ROSBID_SEED must be an unsigned 64-bit integer, got '" +
                      std::string(s) + "'");
  }
  config.seed = seed;
}

std::string CanonicalConfigJson(const ExperimentConfig& c) {
  json j;  // nlohmann orders object keys, so the dump is canonical
  j["policy"] = PolicyName(c.policy);
  j["distribution"] = DistributionJson(c.distribution);
  j["horizons"] = c.horizons;
  j["trials"] = c.trials;
  j["rho"] = OptionalJson(c.rho);
  j["target_ros"] = c.target_ros;
  j["seed"] = c.seed;
  j["alpha_override"] = OptionalJson(c.alpha_override);
  j["eta_override"] = OptionalJson(c.eta_override);
  j["bid_cap"] = c.bid_cap;
  j["intermingled"] = c.intermingled;
  j["oracle"] = OracleModeName(c.oracle);
  j["beta_samples"] = c.beta_samples;
  j["emit_trajectories"] = c.emit_trajectories;
  return j.dump();
}

std::string ConfigHash(const ExperimentConfig& config) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : CanonicalConfigJson(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rosbid
