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

#include "onebit/downlink.hpp"

#include "onebit/quantizer.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace onebit {

namespace {

constexpr double kPi = std::numbers::pi;

RateReport analytic_report(RateMethod method, std::vector<double> per_user,
                           std::vector<SinrComponents> components) {
  RateReport report;
  report.method = method;
  CompensatedSum sum;
  for (double r : per_user) {
    sum.add(r);
  }
  report.sum_rate = sum.value();
  report.per_user_rate = std::move(per_user);
  report.components = std::move(components);
  return report;
}

double closed_form_per_user(std::size_t m, std::size_t k, double rho_p, double p_t) {
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  return std::log2(1.0 + 4.0 * md * rho_p * p_t / (kPi * kPi * (1.0 + kd * rho_p) * (1.0 + p_t)));
}

double conventional_per_user(std::size_t m, std::size_t k, double rho_p, double p_t) {
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  return std::log2(1.0 + md * rho_p * p_t / ((1.0 + p_t) * (1.0 + kd * rho_p)));
}

}  // namespace

double SinrComponents::rate() const { return std::log2(1.0 + sinr()); }

std::string_view to_string(RateMethod method) {
  switch (method) {
    case RateMethod::monte_carlo:
      return "monte_carlo";
    case RateMethod::closed_form:
      return "closed_form";
    case RateMethod::use_and_forget:
      return "use_and_forget";
    case RateMethod::conventional:
      return "conventional";
  }
  return "unknown";
}

double power_normalization(const SystemConfig& cfg) {
  return std::sqrt(cfg.p_t / static_cast<double>(cfg.m));
}

double alpha_d(const SystemConfig& cfg) {
  return std::sqrt(2.0 / (kPi * static_cast<double>(cfg.k) * eta_squared(cfg)));
}

ComplexMatrix mf_precode(const ChannelEstimate& estimate) { return estimate.h_hat.conjugate(); }

ComplexMatrix transmit(const ComplexMatrix& w, const ComplexMatrix& s) {
  if (w.cols() != s.rows()) {
    throw std::invalid_argument("transmit: precoder has " + std::to_string(w.cols()) +
                                " columns but symbol vector has " + std::to_string(s.rows()) +
                                " rows");
  }
  return one_bit_quantize(w * s);
}

std::vector<SinrComponents> sinr_terms_conditional(const ComplexMatrix& h,
                                                   const ChannelEstimate& estimate,
                                                   const SystemConfig& cfg) {
  const ComplexMatrix& h_hat = estimate.h_hat;
  if (h.rows() != h_hat.rows() || h.cols() != h_hat.cols()) {
    throw std::invalid_argument("sinr_terms_conditional: H and H_hat shapes differ");
  }
  if (h.rows() != static_cast<Eigen::Index>(cfg.m) || h.cols() != static_cast<Eigen::Index>(cfg.k)) {
    throw std::invalid_argument("sinr_terms_conditional: channel must be M x K");
  }
  const double gamma_sq = cfg.p_t / static_cast<double>(cfg.m);
  const ComplexMatrix w = mf_precode(estimate);
  ComplexMatrix cxx = w * w.adjoint();
  const BussgangModel model = quantization_noise_covariance(cxx);

  // g(k, i) = h_k^T A conj(h_hat_i)
  const ComplexMatrix g = h.transpose() * (model.alpha.asDiagonal() * w);
  const ComplexMatrix cqq_h = model.c_qq * h.conjugate();

  const Eigen::Index k_users = h.cols();
  std::vector<SinrComponents> out(static_cast<std::size_t>(k_users));
  for (Eigen::Index k = 0; k < k_users; ++k) {
    auto& c = out[static_cast<std::size_t>(k)];
    const double row_power = g.row(k).squaredNorm();
    const double own = std::norm(g(k, k));
    c.desired = gamma_sq * own;
    c.interference = gamma_sq * std::max(row_power - own, 0.0);
    const double qf = (h.col(k).transpose() * cqq_h.col(k)).value().real();
    c.quant_noise = gamma_sq * std::max(qf, 0.0);
    c.gain_var = 0.0;
    c.awgn = 1.0;
  }
  return out;
}

RateReport monte_carlo_rate(const SystemConfig& cfg, std::size_t trials, const RandomStream& stream,
                            EstimateMode mode, unsigned threads) {
  cfg.validate();
  if (trials == 0) {
    throw std::invalid_argument("monte_carlo_rate: trials must be at least 1");
  }
  const std::size_t k = cfg.k;
  std::vector<std::vector<SinrComponents>> per_trial(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = stream.substream(t).engine();
    const ChannelPair pair = draw_channel_pair(cfg, mode, rng);
    per_trial[t] = sinr_terms_conditional(pair.h, pair.estimate, cfg);
  });

  RateReport report;
  report.method = RateMethod::monte_carlo;
  report.trials = trials;
  report.per_user_rate.assign(k, 0.0);
  report.components.assign(k, SinrComponents{});

  std::vector<double> trial_sum(trials);
  for (std::size_t u = 0; u < k; ++u) {
    CompensatedSum rate;
    CompensatedSum desired;
    CompensatedSum interference;
    CompensatedSum quant;
    for (std::size_t t = 0; t < trials; ++t) {
      const SinrComponents& c = per_trial[t][u];
      const double r = c.rate();
      rate.add(r);
      trial_sum[t] += r;
      desired.add(c.desired);
      interference.add(c.interference);
      quant.add(c.quant_noise);
    }
    const double n = static_cast<double>(trials);
    report.per_user_rate[u] = rate.value() / n;
    report.components[u].desired = desired.value() / n;
    report.components[u].interference = interference.value() / n;
    report.components[u].quant_noise = quant.value() / n;
  }
  CompensatedSum sum;
  for (double r : report.per_user_rate) {
    sum.add(r);
  }
  report.sum_rate = sum.value();
  report.sum_rate_stderr = estimate_mean(trial_sum).stderr_of_mean;
  return report;
}

RateReport closed_form_rate(const SystemConfig& cfg) {
  cfg.validate();
  const double md = static_cast<double>(cfg.m);
  const double kd = static_cast<double>(cfg.k);
  const double gamma_sq = cfg.p_t / md;
  const double eta_sq = eta_squared(cfg);
  // alpha_d^2 eta^2 = 2 / (pi K), finite even when eta^2 = 0.
  const double gain_scale = 2.0 / (kPi * kd) * gamma_sq;

  SinrComponents c;
  c.desired = gain_scale * md * md * eta_sq;
  c.gain_var = gain_scale * md;
  c.interference = gain_scale * md * (kd - 1.0);
  c.quant_noise = gamma_sq * (1.0 - 2.0 / kPi) * md;
  c.awgn = 1.0;

  const double r = closed_form_per_user(cfg.m, cfg.k, cfg.rho_p, cfg.p_t);
  return analytic_report(RateMethod::closed_form, std::vector<double>(cfg.k, r),
                         std::vector<SinrComponents>(cfg.k, c));
}

RateReport use_and_forget_rate(const SystemConfig& cfg) {
  cfg.validate();
  const double md = static_cast<double>(cfg.m);
  const double gamma = power_normalization(cfg);
  const double eta_sq = eta_squared(cfg);

  SinrComponents c;
  c.quant_noise = gamma * gamma * (1.0 - 2.0 / kPi) * md;  // E{||h_k||^2} = M
  if (eta_sq > 0.0) {
    // The downlink quantizer sees per-antenna input power diag(C_xx) = K eta^2.
    const RealVector cxx_diag = RealVector::Constant(1, static_cast<double>(cfg.k) * eta_sq);
    const double a = bussgang_gain(cxx_diag)(0);
    const double mean_gain = md * eta_sq;
    const double gain_variance = md * eta_sq;
    const double cross_power = md * eta_sq;
    const double scale = a * a * gamma * gamma;
    c.desired = scale * mean_gain * mean_gain;
    c.gain_var = scale * gain_variance;
    double ui = 0.0;
    for (std::size_t i = 1; i < cfg.k; ++i) {
      ui += cross_power;
    }
    c.interference = scale * ui;
  }
  const double r = c.rate();
  return analytic_report(RateMethod::use_and_forget, std::vector<double>(cfg.k, r),
                         std::vector<SinrComponents>(cfg.k, c));
}

RateReport conventional_rate(const SystemConfig& cfg) {
  cfg.validate();
  const double r = conventional_per_user(cfg.m, cfg.k, cfg.rho_p, cfg.p_t);
  return analytic_report(RateMethod::conventional, std::vector<double>(cfg.k, r), {});
}

MseBoundReport empirical_mse_bound(const SystemConfig& cfg, std::size_t trials,
                                   const RandomStream& stream, EstimateMode mode,
                                   unsigned threads) {
  cfg.validate();
  if (trials == 0) {
    throw std::invalid_argument("empirical_mse_bound: trials must be at least 1");
  }
  const auto k = static_cast<Eigen::Index>(cfg.k);
  const double gamma = power_normalization(cfg);

  // Per trial and user: |s_k|^2, Re(r_k conj(s_k)), |r_k|^2.
  using Sample = std::array<double, 3>;
  std::vector<std::vector<Sample>> samples(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = stream.substream(t).engine();
    const ChannelPair pair = draw_channel_pair(cfg, mode, rng);
    const ComplexMatrix s = sample_cn(k, 1, 1.0, rng);
    const ComplexMatrix y = transmit(mf_precode(pair.estimate), s);
    const ComplexMatrix n = sample_cn(k, 1, 1.0, rng);
    const ComplexMatrix r = gamma * (pair.h.transpose() * y) + n;
    auto& out = samples[t];
    out.resize(static_cast<std::size_t>(k));
    for (Eigen::Index u = 0; u < k; ++u) {
      out[static_cast<std::size_t>(u)] = {std::norm(s(u, 0)),
                                          (r(u, 0) * std::conj(s(u, 0))).real(),
                                          std::norm(r(u, 0))};
    }
  });

  const double g = gamma * alpha_d(cfg) * static_cast<double>(cfg.m) * eta_squared(cfg);
  const double n = static_cast<double>(trials);

  MseBoundReport report;
  report.trials = trials;
  for (Eigen::Index u = 0; u < k; ++u) {
    const auto uu = static_cast<std::size_t>(u);
    std::array<CompensatedSum, 3> sums;
    for (const auto& trial : samples) {
      for (std::size_t j = 0; j < 3; ++j) {
        sums[j].add(trial[uu][j]);
      }
    }
    const double ss = sums[0].value() / n;
    const double rs = sums[1].value() / n;
    const double rr = sums[2].value() / n;
    const double mse = ss - 2.0 * g * rs / rr + g * g / rr;

    // Delta method on the three sample means.
    const std::array<double, 3> grad = {1.0, -2.0 * g / rr, (2.0 * g * rs - g * g) / (rr * rr)};
    const std::array<double, 3> mean = {ss, rs, rr};
    double var = 0.0;
    if (trials > 1) {
      Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
      for (const auto& trial : samples) {
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            cov(a, b) += (trial[uu][a] - mean[a]) * (trial[uu][b] - mean[b]);
          }
        }
      }
      cov /= (n - 1.0);
      const Eigen::Vector3d gv(grad[0], grad[1], grad[2]);
      var = gv.dot(cov * gv) / n;
    }
    report.per_user_mse.push_back(mse);
    report.per_user_rate.push_back(-std::log2(mse));
    report.per_user_stderr.push_back(std::sqrt(std::max(var, 0.0)) / (mse * std::numbers::ln2));
  }
  return report;
}

double case1_limit(double rho_p, double e_t, std::size_t k) {
  if (!(rho_p > 0.0) || !(e_t > 0.0) || k < 1) {
    throw std::invalid_argument("case1_limit: arguments must be positive");
  }
  return std::log2(1.0 + 4.0 * rho_p * e_t / (kPi * kPi * (1.0 + static_cast<double>(k) * rho_p)));
}

double case2_limit(double e_u, double e_t) {
  if (!(e_u > 0.0) || !(e_t > 0.0)) {
    throw std::invalid_argument("case2_limit: arguments must be positive");
  }
  return std::log2(1.0 + 4.0 * e_u * e_t / (kPi * kPi));
}

std::size_t required_antennas(double target_rate_per_user, const SystemConfig& cfg,
                              DacSystem system) {
  if (!(target_rate_per_user >= 0.0) || !std::isfinite(target_rate_per_user)) {
    throw std::invalid_argument("required_antennas: target must be finite and nonnegative");
  }
  SystemConfig probe = cfg;
  probe.m = 1;
  probe.validate();
  const auto rate_at = [&](std::size_t m) {
    return system == DacSystem::one_bit ? closed_form_per_user(m, cfg.k, cfg.rho_p, cfg.p_t)
                                        : conventional_per_user(m, cfg.k, cfg.rho_p, cfg.p_t);
  };
  if (rate_at(1) >= target_rate_per_user) {
    return 1;
  }
  if (cfg.rho_p == 0.0 || cfg.p_t == 0.0) {
    throw std::domain_error("required_antennas: target unreachable with zero power");
  }
  std::size_t lo = 1;  // rate_at(lo) < target
  std::size_t hi = 2;
  constexpr std::size_t kMaxAntennas = std::size_t{1} << 52;
  while (rate_at(hi) < target_rate_per_user) {
    lo = hi;
    if (hi >= kMaxAntennas) {
      throw std::domain_error("required_antennas: target needs more than 2^52 antennas");
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (rate_at(mid) >= target_rate_per_user) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace onebit
