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

#include "onebit/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace onebit {

namespace {

constexpr const char* kCsvColumns =
    "scenario,M,K,rho_p_db,p_t_db,trials,mc_sum_rate,mc_stderr,cf_sum_rate,conv_sum_rate,"
    "case1_limit,case2_limit";

std::string format_number(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("CSV field is not finite");
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string{};
}

void require_nonempty(bool empty, const char* what) {
  if (empty) {
    throw std::invalid_argument(std::string(what) + " must not be empty");
  }
}

void require_positive_antennas(const std::vector<std::size_t>& ms) {
  for (std::size_t m : ms) {
    if (m == 0) {
      throw std::invalid_argument("antenna counts must be positive");
    }
  }
}

void fill_monte_carlo(SweepRow& row, const SystemConfig& cfg, const MonteCarloSettings& mc,
                      std::uint64_t stream_id) {
  row.trials = mc.trials;
  if (mc.trials == 0) {
    return;
  }
  const RateReport report =
      monte_carlo_rate(cfg, mc.trials, RandomStream{mc.seed, stream_id}, mc.mode, mc.threads);
  row.mc_sum_rate = report.sum_rate;
  row.mc_stderr = report.sum_rate_stderr;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

SweepResult run_rate_vs_power(const RateVsPowerSpec& spec) {
  require_nonempty(spec.m_list.empty(), "antenna list");
  require_nonempty(spec.p_t_grid_db.empty(), "transmit power grid");
  require_positive_antennas(spec.m_list);
  if (spec.mc.trials == 0) {
    throw std::invalid_argument("rate-vs-power needs at least one Monte-Carlo trial");
  }
  const double rho_p = db_to_linear(spec.rho_p_db);

  SweepResult result;
  result.seed = spec.mc.seed;
  std::uint64_t point = 0;
  for (std::size_t m : spec.m_list) {
    for (double p_t_db : spec.p_t_grid_db) {
      const SystemConfig cfg = SystemConfig::make(m, spec.k, rho_p, db_to_linear(p_t_db));
      SweepRow row;
      row.scenario = "rate_vs_power";
      row.m = m;
      row.k = spec.k;
      row.rho_p_db = spec.rho_p_db;
      row.p_t_db = p_t_db;
      fill_monte_carlo(row, cfg, spec.mc, point++);
      row.cf_sum_rate = closed_form_rate(cfg).sum_rate;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

SweepResult run_power_scaling(const PowerScalingSpec& spec) {
  require_nonempty(spec.m_grid.empty(), "antenna grid");
  require_positive_antennas(spec.m_grid);
  const double rho_p = db_to_linear(spec.rho_p_db);
  const double e_t = db_to_linear(spec.e_t_db);
  const double e_u = db_to_linear(spec.e_u_db);
  const double kd = static_cast<double>(spec.k);
  const double limit1 = kd * case1_limit(rho_p, e_t, spec.k);
  const double limit2 = kd * case2_limit(e_u, e_t);

  SweepResult result;
  result.seed = spec.mc.seed;
  std::uint64_t point = 0;
  for (std::size_t m : spec.m_grid) {
    const double md = static_cast<double>(m);
    {
      const SystemConfig cfg = SystemConfig::make(m, spec.k, rho_p, e_t / md);
      SweepRow row;
      row.scenario = "power_scaling_case1";
      row.m = m;
      row.k = spec.k;
      row.rho_p_db = spec.rho_p_db;
      row.p_t_db = linear_to_db(cfg.p_t);
      fill_monte_carlo(row, cfg, spec.mc, point++);
      row.cf_sum_rate = closed_form_rate(cfg).sum_rate;
      row.case1_limit = limit1;
      result.rows.push_back(std::move(row));
    }
    {
      const double root_m = std::sqrt(md);
      const SystemConfig cfg = SystemConfig::make(m, spec.k, e_u / root_m, e_t / root_m);
      SweepRow row;
      row.scenario = "power_scaling_case2";
      row.m = m;
      row.k = spec.k;
      row.rho_p_db = linear_to_db(cfg.rho_p);
      row.p_t_db = linear_to_db(cfg.p_t);
      fill_monte_carlo(row, cfg, spec.mc, point++);
      row.cf_sum_rate = closed_form_rate(cfg).sum_rate;
      row.case2_limit = limit2;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

Crossing antenna_crossing(double target_sum_rate, const SystemConfig& cfg) {
  const double per_user = target_sum_rate / static_cast<double>(cfg.k);
  return Crossing{target_sum_rate, required_antennas(per_user, cfg, DacSystem::one_bit),
                  required_antennas(per_user, cfg, DacSystem::conventional)};
}

SweepResult run_antenna_comparison(const AntennaComparisonSpec& spec) {
  std::vector<std::size_t> grid = spec.m_grid;
  if (grid.empty()) {
    for (std::size_t m = 10; m <= 400; m += 10) {
      grid.push_back(m);
    }
  }
  require_positive_antennas(grid);
  const double rho_p = db_to_linear(spec.rho_p_db);
  const double p_t = db_to_linear(spec.p_t_db);

  SweepResult result;
  result.seed = spec.mc.seed;
  std::uint64_t point = 0;
  for (std::size_t m : grid) {
    const SystemConfig cfg = SystemConfig::make(m, spec.k, rho_p, p_t);
    SweepRow row;
    row.scenario = "antenna_comparison";
    row.m = m;
    row.k = spec.k;
    row.rho_p_db = spec.rho_p_db;
    row.p_t_db = spec.p_t_db;
    fill_monte_carlo(row, cfg, spec.mc, point++);
    row.cf_sum_rate = closed_form_rate(cfg).sum_rate;
    row.conv_sum_rate = conventional_rate(cfg).sum_rate;
    result.rows.push_back(std::move(row));
  }

  const Crossing crossing = antenna_crossing(spec.target_sum_rate,
                                             SystemConfig::make(1, spec.k, rho_p, p_t));
  std::ostringstream note;
  note << "crossing target_sum_rate=" << format_number(crossing.target_sum_rate)
       << " one_bit_m=" << crossing.one_bit_m << " conventional_m=" << crossing.conventional_m;
  result.notes.push_back(note.str());
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
  require_nonempty(spec.grid.empty(), "sweep grid");
  SweepResult result;
  result.seed = spec.mc.seed;
  std::uint64_t point = 0;
  for (const SystemConfig& cfg : spec.grid) {
    cfg.validate();
    if (!(cfg.rho_p > 0.0) || !(cfg.p_t > 0.0)) {
      throw std::invalid_argument("sweep grid powers must be positive");
    }
    SweepRow row;
    row.scenario = "custom";
    row.m = cfg.m;
    row.k = cfg.k;
    row.rho_p_db = linear_to_db(cfg.rho_p);
    row.p_t_db = linear_to_db(cfg.p_t);
    fill_monte_carlo(row, cfg, spec.mc, point++);
    row.cf_sum_rate = closed_form_rate(cfg).sum_rate;
    row.conv_sum_rate = conventional_rate(cfg).sum_rate;
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "# onebit-mimo-sim " << kCsvSchemaVersion << ", seed=" << result.seed << '\n';
  out << kCsvColumns << '\n';
  for (const SweepRow& row : result.rows) {
    out << row.scenario << ',' << row.m << ',' << row.k << ',' << format_number(row.rho_p_db)
        << ',' << format_number(row.p_t_db) << ',' << row.trials << ','
        << format_optional(row.mc_sum_rate) << ',' << format_optional(row.mc_stderr) << ','
        << format_optional(row.cf_sum_rate) << ',' << format_optional(row.conv_sum_rate) << ','
        << format_optional(row.case1_limit) << ',' << format_optional(row.case2_limit) << '\n';
  }
  for (const std::string& note : result.notes) {
    out << "# " << note << '\n';
  }
}

void write_csv_file(const std::string& path, const SweepResult& result) {
  std::ostringstream buffer;
  write_csv(buffer, result);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  file << buffer.str();
  file.flush();
  if (!file) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

}  // namespace onebit
