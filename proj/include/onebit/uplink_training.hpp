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

#ifndef ONEBIT_UPLINK_TRAINING_HPP
#define ONEBIT_UPLINK_TRAINING_HPP

#include "onebit/numerics.hpp"

#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace onebit {

/// Raised for configurations the model does not cover (pilot length != users).
class unsupported_configuration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario parameters. Powers are linear (not dB).
struct SystemConfig {
  std::size_t m = 1;    ///< base-station antennas
  std::size_t k = 1;    ///< single-antenna users
  std::size_t tau = 1;  ///< pilot length in symbols, equal to k
  double rho_p = 1.0;   ///< per-user training power
  double p_t = 1.0;     ///< total downlink transmit power

  /// Config with tau = k, validated.
  static SystemConfig make(std::size_t m, std::size_t k, double rho_p, double p_t);

  /// Throws std::invalid_argument (or unsupported_configuration for tau != k).
  void validate() const;
};

enum class EstimateMode { simulated, gaussian_approx };

std::string_view to_string(EstimateMode mode);

struct ChannelEstimate {
  ComplexMatrix h_hat;  ///< M x K
  double eta_sq = 0.0;  ///< model variance of each estimate entry
  EstimateMode mode = EstimateMode::simulated;
};

/// A true channel draw together with its estimate.
struct ChannelPair {
  ComplexMatrix h;
  ChannelEstimate estimate;
};

/// tau x K scaled DFT pilot matrix, Phi^H Phi = tau I, unit-modulus entries.
ComplexMatrix generate_pilots(std::size_t k, std::size_t tau);

/// Bussgang gain of the training quantizer, sqrt(2 / (pi (K rho_p + 1))).
double alpha_p(const SystemConfig& cfg);

/// Per-entry variance of the LMMSE estimate, 2 K rho_p / (pi (1 + K rho_p)).
double eta_squared(const SystemConfig& cfg);

/// LMMSE estimate from the one-bit training observation r_p (M x tau):
/// vec(H_hat) = alpha_p (Phi kron sqrt(rho_p) I_M)^H vec(R_p).
ComplexMatrix estimate_from_quantized(const ComplexMatrix& r_p, const SystemConfig& cfg);

/// Sends the pilots over `h` (M x K), adds CN(0, 1) noise, quantizes with
/// one-bit ADCs and returns the LMMSE estimate.
ChannelEstimate train_and_estimate(const ComplexMatrix& h, const SystemConfig& cfg, Rng& rng);
ChannelEstimate train_and_estimate(const ComplexMatrix& h, const SystemConfig& cfg,
                                   const RandomStream& stream);

/// Draws H ~ CN(0, 1) and a jointly Gaussian estimate
/// H_hat = eta^2 H + sqrt(eta^2 - eta^4) E, E ~ CN(0, 1), which matches
/// E|h_hat|^2 = E{h_hat h^*} = eta^2 entrywise.
ChannelPair sample_estimate_gaussian_approx(const SystemConfig& cfg, Rng& rng);
ChannelPair sample_estimate_gaussian_approx(const SystemConfig& cfg, const RandomStream& stream);

/// Draws H ~ CN(0, 1) and its estimate by the requested route.
ChannelPair draw_channel_pair(const SystemConfig& cfg, EstimateMode mode, Rng& rng);

}  // namespace onebit

#endif  // ONEBIT_UPLINK_TRAINING_HPP
