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

// Sampling oracles shared by the unit and acceptance suites. Nothing here
// calls into the library's analytic formulas.

#ifndef ONEBIT_TEST_SUPPORT_HPP
#define ONEBIT_TEST_SUPPORT_HPP

#include "onebit/numerics.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <complex>

namespace onebit::testing {

/// Well-conditioned random Hermitian PSD matrix.
inline ComplexMatrix random_hermitian_psd(Eigen::Index n, Rng& rng) {
  const ComplexMatrix b = sample_cn(n, n + 2, 1.0, rng);
  return b * b.adjoint() / static_cast<double>(n + 2);
}

/// Draws `count` columns of CN(0, cov).
inline ComplexMatrix correlated_gaussian(const ComplexMatrix& cov, Eigen::Index count, Rng& rng) {
  const Eigen::LLT<ComplexMatrix> llt(cov);
  const ComplexMatrix l = llt.matrixL();
  return l * sample_cn(cov.rows(), count, 1.0, rng);
}

/// Streaming estimate of E{a b^H} from paired column samples, with the
/// standard error of the real and imaginary part of every entry.
class CrossMoment {
 public:
  CrossMoment(Eigen::Index rows, Eigen::Index cols)
      : sum_(ComplexMatrix::Zero(rows, cols)),
        sq_re_(Eigen::MatrixXd::Zero(rows, cols)),
        sq_im_(Eigen::MatrixXd::Zero(rows, cols)) {}

  void add(const ComplexMatrix& a, const ComplexMatrix& b) {
    for (Eigen::Index s = 0; s < a.cols(); ++s) {
      for (Eigen::Index j = 0; j < b.rows(); ++j) {
        const std::complex<double> bj = std::conj(b(j, s));
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
          const std::complex<double> v = a(i, s) * bj;
          sum_(i, j) += v;
          sq_re_(i, j) += v.real() * v.real();
          sq_im_(i, j) += v.imag() * v.imag();
        }
      }
    }
    n_ += static_cast<double>(a.cols());
  }

  [[nodiscard]] ComplexMatrix mean() const { return sum_ / n_; }

  [[nodiscard]] Eigen::MatrixXd stderr_re() const {
    const Eigen::MatrixXd m = sum_.real() / n_;
    return ((sq_re_ / n_ - m.cwiseProduct(m)) / n_).cwiseMax(0.0).cwiseSqrt();
  }
  [[nodiscard]] Eigen::MatrixXd stderr_im() const {
    const Eigen::MatrixXd m = sum_.imag() / n_;
    return ((sq_im_ / n_ - m.cwiseProduct(m)) / n_).cwiseMax(0.0).cwiseSqrt();
  }

  /// Largest |mean - target| measured in standard errors over all entries
  /// with nonzero spread. Entries with zero spread must match to 1e-12.
  [[nodiscard]] double max_sigma_deviation(const ComplexMatrix& target) const {
    const ComplexMatrix m = mean();
    const Eigen::MatrixXd se_re = stderr_re();
    const Eigen::MatrixXd se_im = stderr_im();
    double worst = 0.0;
    const auto score = [&worst](double diff, double se) {
      if (se > 1e-14) {
        worst = std::max(worst, std::abs(diff) / se);
      } else if (std::abs(diff) > 1e-12) {
        worst = std::max(worst, 1e300);
      }
    };
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        score(m(i, j).real() - target(i, j).real(), se_re(i, j));
        score(m(i, j).imag() - target(i, j).imag(), se_im(i, j));
      }
    }
    return worst;
  }

 private:
  ComplexMatrix sum_;
  Eigen::MatrixXd sq_re_;
  Eigen::MatrixXd sq_im_;
  double n_ = 0.0;
};

}  // namespace onebit::testing

#endif  // ONEBIT_TEST_SUPPORT_HPP
