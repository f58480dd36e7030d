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

#ifndef ONEBIT_DOWNLINK_HPP
#define ONEBIT_DOWNLINK_HPP

#include "onebit/numerics.hpp"
#include "onebit/uplink_training.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace onebit {

/// Powers behind one user's SINR. All quantities are normalized to the
/// receiver noise power, so awgn is 1.
struct SinrComponents {
  double desired = 0.0;
  double gain_var = 0.0;
  double interference = 0.0;
  double quant_noise = 0.0;
  double awgn = 1.0;

  [[nodiscard]] double sinr() const {
    return desired / (gain_var + interference + quant_noise + awgn);
  }
  /// log2(1 + sinr) in bits/s/Hz.
  [[nodiscard]] double rate() const;
};

enum class RateMethod { monte_carlo, closed_form, use_and_forget, conventional };

std::string_view to_string(RateMethod method);

struct RateReport {
  std::vector<double> per_user_rate;  ///< bits/s/Hz
  double sum_rate = 0.0;
  double sum_rate_stderr = 0.0;  ///< zero for analytic methods
  /// Per-user powers. Trial-averaged for monte_carlo; empty for conventional.
  std::vector<SinrComponents> components;
  RateMethod method = RateMethod::closed_form;
  std::size_t trials = 0;
};

enum class DacSystem { one_bit, conventional };

/// gamma = sqrt(P_t / M). Scales unit-modulus DAC outputs to total power P_t.
double power_normalization(const SystemConfig& cfg);

/// Bussgang gain of the downlink quantizer under the Gaussian estimate
/// model, sqrt(2 / (pi K eta^2)).
double alpha_d(const SystemConfig& cfg);

/// Matched-filter precoder W = conj(H_hat).
ComplexMatrix mf_precode(const ChannelEstimate& estimate);

/// One-bit DAC output Q(W s). `s` is K x 1 (or K x N for N symbol vectors).
ComplexMatrix transmit(const ComplexMatrix& w, const ComplexMatrix& s);

/// Per-user SINR powers conditioned on one (H, H_hat) realization.
///
/// The precoded signal x = conj(H_hat) s is Gaussian given H_hat with
/// C_xx = conj(H_hat) H_hat^T, so the quantizer is replaced by its exact
/// Bussgang model: A = diag(alpha) and C_qq from the arcsine law. For
/// g_ki = h_k^T A conj(h_hat_i):
///   desired      = gamma^2 |g_kk|^2
///   interference = gamma^2 sum_{i != k} |g_ki|^2
///   quant_noise  = gamma^2 h_k^T C_qq conj(h_k)
/// gain_var is zero because the gain is known given the realization.
std::vector<SinrComponents> sinr_terms_conditional(const ComplexMatrix& h,
                                                   const ChannelEstimate& estimate,
                                                   const SystemConfig& cfg);

/// Ergodic lower bound with worst-case Gaussian quantization noise,
/// averaged over `trials` channel and estimate realizations. Trial t draws
/// from stream.substream(t); results are identical for any thread count.
RateReport monte_carlo_rate(const SystemConfig& cfg, std::size_t trials, const RandomStream& stream,
                            EstimateMode mode = EstimateMode::simulated, unsigned threads = 1);

/// log2(1 + 4 M rho_p P_t / (pi^2 (1 + K rho_p)(1 + P_t))) for every user.
RateReport closed_form_rate(const SystemConfig& cfg);

/// Use-and-forget rate assembled term by term from the Gaussian estimate
/// moments E{h_hat_k^T h_k^*} = Var{h_hat_k^T h_k^*} = E{|h_hat_k^T h_i^*|^2}
/// = M eta^2 and E{||h_k||^2} = M. Agrees with closed_form_rate.
RateReport use_and_forget_rate(const SystemConfig& cfg);

/// Rate of MF precoding with ideal (infinite-resolution) converters.
RateReport conventional_rate(const SystemConfig& cfg);

/// Simulated symbol-estimation MSE bound for every user.
struct MseBoundReport {
  std::vector<double> per_user_rate;    ///< log2(1 / mse)
  std::vector<double> per_user_stderr;  ///< delta-method standard error of the rate
  std::vector<double> per_user_mse;
  std::size_t trials = 0;
};

/// Runs symbols -> MF precoder -> one-bit DACs -> channel -> receiver and
/// scores the scalar LMMSE symbol estimate s~_k = c r_k, where
/// c = g / E{|r_k|^2} and g = gamma alpha_d M eta^2 is the known mean gain.
MseBoundReport empirical_mse_bound(const SystemConfig& cfg, std::size_t trials,
                                   const RandomStream& stream,
                                   EstimateMode mode = EstimateMode::simulated,
                                   unsigned threads = 1);

/// Per-user rate limit as M grows with P_t = E_t / M (fixed training power).
double case1_limit(double rho_p, double e_t, std::size_t k);

/// Per-user rate limit as M grows with rho_p = E_u / sqrt(M), P_t = E_t / sqrt(M).
double case2_limit(double e_u, double e_t);

/// Smallest antenna count whose closed-form per-user rate reaches the
/// target. cfg.m is ignored. Throws std::domain_error when unreachable.
std::size_t required_antennas(double target_rate_per_user, const SystemConfig& cfg,
                              DacSystem system);

}  // namespace onebit

#endif  // ONEBIT_DOWNLINK_HPP
