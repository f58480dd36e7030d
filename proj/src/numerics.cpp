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

#include "onebit/numerics.hpp"

#include <cmath>

namespace onebit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream{seed, splitmix64(stream_id ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

Rng RandomStream::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return Rng(seq);
}

ComplexMatrix sample_cn(Eigen::Index rows, Eigen::Index cols, double variance, Rng& rng) {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("sample_cn: variance must be finite and nonnegative");
  }
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("sample_cn: negative dimension");
  }
  if (variance == 0.0) {
    return ComplexMatrix::Zero(rows, cols);
  }
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  ComplexMatrix out(rows, cols);
  // Column-major fill order, real part before imaginary part.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = {re, im};
    }
  }
  return out;
}

ComplexMatrix sample_cn(Eigen::Index rows, Eigen::Index cols, double variance,
                        const RandomStream& stream) {
  Rng rng = stream.engine();
  return sample_cn(rows, cols, variance, rng);
}

MeanEstimate estimate_mean(const std::vector<double>& samples) {
  MeanEstimate est;
  est.count = samples.size();
  if (samples.empty()) {
    return est;
  }
  CompensatedSum sum;
  for (double x : samples) {
    sum.add(x);
  }
  est.mean = sum.value() / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    CompensatedSum sq;
    for (double x : samples) {
      sq.add((x - est.mean) * (x - est.mean));
    }
    const double n = static_cast<double>(samples.size());
    est.stderr_of_mean = std::sqrt(sq.value() / (n - 1.0) / n);
  }
  return est;
}

}  // namespace onebit
