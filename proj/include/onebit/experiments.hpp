// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ONEBIT_EXPERIMENTS_HPP
#define ONEBIT_EXPERIMENTS_HPP

#include "onebit/downlink.hpp"
#include "onebit/uplink_training.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onebit {

inline constexpr std::string_view kCsvSchemaVersion = "v1";

double db_to_linear(double db);
double linear_to_db(double linear);

enum class Scenario { rate_vs_power, power_scaling, antenna_comparison, custom };

/// One CSV line. Fields that a scenario does not produce stay empty.
struct SweepRow {
  std::string scenario;
  std::size_t m = 0;
  std::size_t k = 0;
  double rho_p_db = 0.0;
  double p_t_db = 0.0;
  std::size_t trials = 0;
  std::optional<double> mc_sum_rate;
  std::optional<double> mc_stderr;
  std::optional<double> cf_sum_rate;
  std::optional<double> conv_sum_rate;
  std::optional<double> case1_limit;
  std::optional<double> case2_limit;
};

/// Shared Monte-Carlo settings. trials == 0 skips the Monte-Carlo columns
/// in scenarios where they are optional.
struct MonteCarloSettings {
  std::size_t trials = 2000;
  std::uint64_t seed = 20170301;
  EstimateMode mode = EstimateMode::simulated;
  unsigned threads = 1;
};

/// Arbitrary list of linear-scale configurations.
struct SweepSpec {
  Scenario scenario = Scenario::custom;
  std::vector<SystemConfig> grid;
  MonteCarloSettings mc;
  std::string output_path;
};

struct RateVsPowerSpec {
  std::vector<std::size_t> m_list{32, 64, 128};
  std::vector<double> p_t_grid_db{-10, -5, 0, 5, 10};
  std::size_t k = 10;
  double rho_p_db = 10.0;
  MonteCarloSettings mc;
};

struct PowerScalingSpec {
  std::vector<std::size_t> m_grid{16, 32, 64, 128, 256, 512};
  std::size_t k = 10;
  double rho_p_db = 10.0;  ///< fixed training power of the 1/M case
  double e_t_db = 10.0;
  double e_u_db = 10.0;
  MonteCarloSettings mc{0};
};

struct AntennaComparisonSpec {
  std::vector<std::size_t> m_grid;  ///< empty: 10, 20, ..., 400
  std::size_t k = 10;
  double rho_p_db = 10.0;
  double p_t_db = 10.0;
  double target_sum_rate = 35.0;
  MonteCarloSettings mc{0};
};

/// Smallest M per system whose closed-form sum rate reaches the target.
struct Crossing {
  double target_sum_rate = 0.0;
  std::size_t one_bit_m = 0;
  std::size_t conventional_m = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;  ///< emitted as trailing '#' lines
  std::uint64_t seed = 0;
};

/// Sum rate versus transmit power: Monte-Carlo and closed form for every (M, P_t).
SweepResult run_rate_vs_power(const RateVsPowerSpec& spec);

/// Sum rate versus M under P_t = E_t/M ("power_scaling_case1") and
/// rho_p = E_u/sqrt(M), P_t = E_t/sqrt(M) ("power_scaling_case2").
SweepResult run_power_scaling(const PowerScalingSpec& spec);

/// One-bit versus conventional sum rate over M, with the target crossing.
SweepResult run_antenna_comparison(const AntennaComparisonSpec& spec);
Crossing antenna_crossing(double target_sum_rate, const SystemConfig& cfg);

SweepResult run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepResult& result);

/// Writes to `path`; throws std::runtime_error naming the path on failure.
void write_csv_file(const std::string& path, const SweepResult& result);

}  // namespace onebit

#endif  // ONEBIT_EXPERIMENTS_HPP
