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

#include "onebit/uplink_training.hpp"

#include "onebit/quantizer.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace onebit {

SystemConfig SystemConfig::make(std::size_t m, std::size_t k, double rho_p, double p_t) {
  SystemConfig cfg{m, k, k, rho_p, p_t};
  cfg.validate();
  return cfg;
}

void SystemConfig::validate() const {
  if (m < 1 || k < 1) {
    throw std::invalid_argument("SystemConfig: need at least one antenna and one user");
  }
  if (tau != k) {
    throw unsupported_configuration("SystemConfig: pilot length tau=" + std::to_string(tau) +
                                    " must equal the number of users K=" + std::to_string(k));
  }
  if (!(rho_p >= 0.0) || !std::isfinite(rho_p)) {
    throw std::invalid_argument("SystemConfig: training power must be finite and nonnegative");
  }
  if (!(p_t >= 0.0) || !std::isfinite(p_t)) {
    throw std::invalid_argument("SystemConfig: transmit power must be finite and nonnegative");
  }
}

std::string_view to_string(EstimateMode mode) {
  switch (mode) {
    case EstimateMode::simulated:
      return "simulated";
    case EstimateMode::gaussian_approx:
      return "gaussian_approx";
  }
  return "unknown";
}

ComplexMatrix generate_pilots(std::size_t k, std::size_t tau) {
  if (k < 1) {
    throw std::invalid_argument("generate_pilots: need at least one user");
  }
  if (tau != k) {
    throw unsupported_configuration("generate_pilots: only tau == K is supported");
  }
  const auto n = static_cast<Eigen::Index>(k);
  ComplexMatrix phi(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      // Reduce the exponent modulo K first so large indices keep full precision.
      const auto idx = static_cast<double>((r * c) % n);
      phi(r, c) = std::polar(1.0, -2.0 * std::numbers::pi * idx / static_cast<double>(n));
    }
  }
  return phi;
}

double alpha_p(const SystemConfig& cfg) {
  const double k_rho = static_cast<double>(cfg.k) * cfg.rho_p;
  return std::sqrt(2.0 / (std::numbers::pi * (k_rho + 1.0)));
}

double eta_squared(const SystemConfig& cfg) {
  const double k_rho = static_cast<double>(cfg.k) * cfg.rho_p;
  return 2.0 * k_rho / (std::numbers::pi * (1.0 + k_rho));
}

ComplexMatrix estimate_from_quantized(const ComplexMatrix& r_p, const SystemConfig& cfg) {
  const auto m = static_cast<Eigen::Index>(cfg.m);
  const auto tau = static_cast<Eigen::Index>(cfg.tau);
  if (r_p.rows() != m || r_p.cols() != tau) {
    throw std::invalid_argument("estimate_from_quantized: observation must be M x tau");
  }
  const ComplexMatrix phi = generate_pilots(cfg.k, cfg.tau);
  // (Phi^H kron I_M) vec(R) = vec(R conj(Phi)).
  return (alpha_p(cfg) * std::sqrt(cfg.rho_p)) * (r_p * phi.conjugate());
}

ChannelEstimate train_and_estimate(const ComplexMatrix& h, const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  if (h.rows() != static_cast<Eigen::Index>(cfg.m) || h.cols() != static_cast<Eigen::Index>(cfg.k)) {
    throw std::invalid_argument("train_and_estimate: channel must be M x K");
  }
  const ComplexMatrix phi = generate_pilots(cfg.k, cfg.tau);
  // (Phi kron sqrt(rho_p) I_M) vec(H) = vec(sqrt(rho_p) H Phi^T).
  const ComplexMatrix noise = sample_cn(h.rows(), phi.rows(), 1.0, rng);
  const ComplexMatrix y_p = std::sqrt(cfg.rho_p) * (h * phi.transpose()) + noise;
  const ComplexMatrix r_p = one_bit_quantize(y_p);
  return ChannelEstimate{estimate_from_quantized(r_p, cfg), eta_squared(cfg),
                         EstimateMode::simulated};
}

ChannelEstimate train_and_estimate(const ComplexMatrix& h, const SystemConfig& cfg,
                                   const RandomStream& stream) {
  Rng rng = stream.engine();
  return train_and_estimate(h, cfg, rng);
}

ChannelPair sample_estimate_gaussian_approx(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto m = static_cast<Eigen::Index>(cfg.m);
  const auto k = static_cast<Eigen::Index>(cfg.k);
  const double eta_sq = eta_squared(cfg);
  ComplexMatrix h = sample_cn(m, k, 1.0, rng);
  const ComplexMatrix e = sample_cn(m, k, 1.0, rng);
  ComplexMatrix h_hat = eta_sq * h + std::sqrt(std::max(eta_sq - eta_sq * eta_sq, 0.0)) * e;
  return ChannelPair{std::move(h),
                     ChannelEstimate{std::move(h_hat), eta_sq, EstimateMode::gaussian_approx}};
}

ChannelPair sample_estimate_gaussian_approx(const SystemConfig& cfg, const RandomStream& stream) {
  Rng rng = stream.engine();
  return sample_estimate_gaussian_approx(cfg, rng);
}

ChannelPair draw_channel_pair(const SystemConfig& cfg, EstimateMode mode, Rng& rng) {
  if (mode == EstimateMode::gaussian_approx) {
    return sample_estimate_gaussian_approx(cfg, rng);
  }
  cfg.validate();
  ComplexMatrix h =
      sample_cn(static_cast<Eigen::Index>(cfg.m), static_cast<Eigen::Index>(cfg.k), 1.0, rng);
  ChannelEstimate est = train_and_estimate(h, cfg, rng);
  return ChannelPair{std::move(h), std::move(est)};
}

}  // namespace onebit
