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

#include "onebit/cli.hpp"

#include "onebit/downlink.hpp"
#include "onebit/experiments.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace onebit {

namespace {

struct Options {
  std::vector<std::size_t> m;
  std::size_t k = 10;
  double rho_p_db = 10.0;
  std::vector<double> pt_db;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  std::string mode = "simulated";
  std::string out;
  unsigned threads = 1;
  double et_db = 10.0;
  double eu_db = 10.0;
  double target_per_user = 0.0;
  double target_sum = 35.0;
};

MonteCarloSettings mc_settings(const Options& o, std::size_t trials) {
  MonteCarloSettings mc;
  mc.trials = trials;
  mc.seed = o.seed;
  mc.mode = o.mode == "gaussian" ? EstimateMode::gaussian_approx : EstimateMode::simulated;
  mc.threads = o.threads;
  return mc;
}

void emit(const SweepResult& result, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    write_csv(out, result);
  } else {
    write_csv_file(o.out, result);
  }
}

void print_report_line(std::ostream& out, const RateReport& r) {
  out << std::left << std::setw(16) << to_string(r.method) << std::right << std::fixed
      << std::setprecision(4) << std::setw(10) << r.sum_rate << std::setw(10)
      << r.per_user_rate.front();
  if (r.method == RateMethod::monte_carlo) {
    out << "  +/- " << r.sum_rate_stderr << " (" << r.trials << " trials)";
  }
  out << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-bit DAC massive MIMO downlink rate simulator", "onebit-sim"};
  app.set_config("--config", "", "Flat key = value file with the same keys as the flags");
  app.require_subcommand(1);

  Options o;
  auto* opt_m = app.add_option("--m", o.m, "Base-station antenna count(s)")->delimiter(',');
  app.add_option("--k", o.k, "Number of users")->check(CLI::PositiveNumber);
  app.add_option("--rho-p-db", o.rho_p_db, "Training power per user [dB]");
  auto* opt_pt = app.add_option("--pt-db", o.pt_db, "Total transmit power(s) [dB]")->delimiter(',');
  auto* opt_trials = app.add_option("--trials", o.trials, "Monte-Carlo trials per point");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--mode", o.mode, "Channel-estimate route")
      ->check(CLI::IsMember({"simulated", "gaussian"}));
  app.add_option("--out", o.out, "CSV output path (default: stdout)");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--et-db", o.et_db, "E_t for the power-scaling cases [dB]");
  app.add_option("--eu-db", o.eu_db, "E_u for the 1/sqrt(M) case [dB]");
  auto* opt_target = app.add_option("--target-per-user", o.target_per_user,
                                    "Per-user rate target [bits/s/Hz]");
  app.add_option("--target-sum", o.target_sum, "Sum-rate target for the crossing report");

  auto* rate_vs_power = app.add_subcommand("rate-vs-power", "Sum rate versus P_t (CSV)");
  auto* power_scaling = app.add_subcommand("power-scaling", "Sum rate versus M, 1/M and 1/sqrt(M) power scaling (CSV)");
  auto* antenna_cmp = app.add_subcommand("antenna-comparison", "One-bit versus ideal DACs over M (CSV)");
  auto* rate = app.add_subcommand("rate", "All rate methods at one operating point");
  auto* plan = app.add_subcommand("plan", "Antennas needed for a per-user rate target");
  for (auto* sub : {rate_vs_power, power_scaling, antenna_cmp, rate, plan}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsageError;
  }

  try {
    const bool trials_given = opt_trials->count() > 0;
    if (*rate_vs_power) {
      RateVsPowerSpec spec;
      if (opt_m->count() > 0) spec.m_list = o.m;
      if (opt_pt->count() > 0) spec.p_t_grid_db = o.pt_db;
      spec.k = o.k;
      spec.rho_p_db = o.rho_p_db;
      spec.mc = mc_settings(o, o.trials);
      emit(run_rate_vs_power(spec), o, out);
    } else if (*power_scaling) {
      PowerScalingSpec spec;
      if (opt_m->count() > 0) spec.m_grid = o.m;
      spec.k = o.k;
      spec.rho_p_db = o.rho_p_db;
      spec.e_t_db = o.et_db;
      spec.e_u_db = o.eu_db;
      spec.mc = mc_settings(o, o.trials);
      emit(run_power_scaling(spec), o, out);
    } else if (*antenna_cmp) {
      AntennaComparisonSpec spec;
      if (opt_m->count() > 0) spec.m_grid = o.m;
      spec.k = o.k;
      spec.rho_p_db = o.rho_p_db;
      spec.p_t_db = opt_pt->count() > 0 ? o.pt_db.front() : 10.0;
      spec.target_sum_rate = o.target_sum;
      spec.mc = mc_settings(o, trials_given ? o.trials : 0);
      emit(run_antenna_comparison(spec), o, out);
    } else if (*rate) {
      const std::size_t m = opt_m->count() > 0 ? o.m.front() : 64;
      const double pt_db = opt_pt->count() > 0 ? o.pt_db.front() : 10.0;
      const SystemConfig cfg = SystemConfig::make(m, o.k, db_to_linear(o.rho_p_db), db_to_linear(pt_db));
      const MonteCarloSettings mc = mc_settings(o, o.trials);
      out << "M=" << m << " K=" << o.k << " rho_p=" << o.rho_p_db << " dB P_t=" << pt_db
          << " dB mode=" << to_string(mc.mode) << " seed=" << mc.seed << '\n';
      out << std::left << std::setw(16) << "method" << std::right << std::setw(10) << "sum_rate"
          << std::setw(10) << "per_user" << '\n';
      print_report_line(out, closed_form_rate(cfg));
      print_report_line(out, use_and_forget_rate(cfg));
      if (mc.trials > 0) {
        print_report_line(out, monte_carlo_rate(cfg, mc.trials, RandomStream{mc.seed, 0}, mc.mode,
                                                mc.threads));
      }
      print_report_line(out, conventional_rate(cfg));
    } else if (*plan) {
      if (opt_target->count() == 0) {
        throw std::invalid_argument("plan requires --target-per-user");
      }
      const double pt_db = opt_pt->count() > 0 ? o.pt_db.front() : 10.0;
      const SystemConfig cfg = SystemConfig::make(1, o.k, db_to_linear(o.rho_p_db), db_to_linear(pt_db));
      const std::size_t one_bit = required_antennas(o.target_per_user, cfg, DacSystem::one_bit);
      const std::size_t conv = required_antennas(o.target_per_user, cfg, DacSystem::conventional);
      out << "one_bit " << one_bit << '\n';
      out << "conventional " << conv << '\n';
      out << "ratio " << std::fixed << std::setprecision(4)
          << static_cast<double>(one_bit) / static_cast<double>(conv) << '\n';
    }
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace onebit
