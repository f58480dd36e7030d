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

#ifndef ONEBIT_NUMERICS_HPP
#define ONEBIT_NUMERICS_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace onebit {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = Eigen::VectorXd;

using Rng = std::mt19937_64;

/// Immutable descriptor of a reproducible random substream.
///
/// Two descriptors with equal (seed, stream_id) yield engines producing
/// identical draws. Monte-Carlo trial t of a run seeded by `s` uses
/// `s.substream(t)`, so every trial is reproducible on its own regardless
/// of which worker executes it or in what order.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  [[nodiscard]] RandomStream substream(std::uint64_t index) const;
  [[nodiscard]] Rng engine() const;

  friend bool operator==(const RandomStream&, const RandomStream&) = default;
};

/// i.i.d. CN(0, variance) entries: real and imaginary parts each N(0, variance/2).
ComplexMatrix sample_cn(Eigen::Index rows, Eigen::Index cols, double variance, Rng& rng);
ComplexMatrix sample_cn(Eigen::Index rows, Eigen::Index cols, double variance,
                        const RandomStream& stream);

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Result = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result lhs = a;
  Result rhs = b;
  return Result(Eigen::kroneckerProduct(lhs, rhs));
}

/// Column-stacking vectorization.
template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(a.derived().reshaped());
}

/// Inverse of vec(); throws std::invalid_argument when the length does not match.
template <typename Derived>
auto unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index rows, Eigen::Index cols) {
  using Scalar = typename Derived::Scalar;
  if (v.size() != rows * cols) {
    throw std::invalid_argument("unvec: vector length " + std::to_string(v.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flat = v.derived().reshaped();
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(flat.reshaped(rows, cols));
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Sample mean and standard error of the mean, accumulated in input order.
struct MeanEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t count = 0;
};

MeanEstimate estimate_mean(const std::vector<double>& samples);

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static
/// partition. fn must only write to slot i of preallocated output.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) {
        break;
      }
      pool.emplace_back([&fn, &errors, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) {
            fn(i);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace onebit

#endif  // ONEBIT_NUMERICS_HPP
