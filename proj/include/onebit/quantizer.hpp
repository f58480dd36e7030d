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

#ifndef ONEBIT_QUANTIZER_HPP
#define ONEBIT_QUANTIZER_HPP

#include "onebit/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onebit {

/// Tolerance within which correlation coefficients beyond +-1 are clamped.
inline constexpr double kArcsineClampTolerance = 1e-9;

/// Equivalent linear model y = A x + q of a one-bit quantizer driven by a
/// zero-mean Gaussian vector x. A is diagonal (stored as `alpha`), q is
/// uncorrelated with x and has covariance `c_qq`.
template <typename Real>
struct BasicBussgangModel {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> alpha;
  CMatrix<Real> c_qq;
};

using BussgangModel = BasicBussgangModel<double>;

/// Maps every entry to (sgn Re + j sgn Im)/sqrt(2), with sgn(0) = +1.
template <typename Derived>
auto one_bit_quantize(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Scalar::value_type;
  const Real level = Real(1) / std::sqrt(Real(2));
  return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(
      x.derived().unaryExpr([level](const Scalar& z) {
        return Scalar(z.real() >= Real(0) ? level : -level, z.imag() >= Real(0) ? level : -level);
      }));
}

/// Bussgang gain sqrt(2/pi) / sqrt(c) for each input variance c.
template <typename Derived>
auto bussgang_gain(const Eigen::MatrixBase<Derived>& cxx_diag) {
  using Real = typename Derived::Scalar;
  const Real scale = std::sqrt(Real(2) / std::numbers::pi_v<Real>);
  Eigen::Matrix<Real, Eigen::Dynamic, 1> gain(cxx_diag.size());
  for (Eigen::Index i = 0; i < cxx_diag.size(); ++i) {
    const Real c = cxx_diag(i);
    if (!(c > Real(0)) || !std::isfinite(c)) {
      throw std::domain_error("bussgang_gain: input variance must be positive and finite");
    }
    gain(i) = scale / std::sqrt(c);
  }
  return gain;
}

namespace detail {

template <typename Real>
Real clamped_asin(Real rho) {
  if (std::abs(rho) > Real(1) + Real(kArcsineClampTolerance) || std::isnan(rho)) {
    throw std::domain_error("arcsine_covariance: correlation coefficient outside [-1, 1]");
  }
  return std::asin(std::clamp(rho, Real(-1), Real(1)));
}

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> checked_diagonal(const CMatrix<Real>& cxx) {
  if (cxx.rows() != cxx.cols()) {
    throw std::invalid_argument("covariance must be square");
  }
  Eigen::Matrix<Real, Eigen::Dynamic, 1> d(cxx.rows());
  for (Eigen::Index i = 0; i < cxx.rows(); ++i) {
    const auto c = cxx(i, i);
    if (!(c.real() > Real(0)) || std::abs(c.imag()) > Real(1e-9) * c.real()) {
      throw std::invalid_argument("covariance diagonal must be real and positive");
    }
    d(i) = c.real();
  }
  return d;
}

}  // namespace detail

/// Output covariance of the one-bit quantizer for a zero-mean circular
/// Gaussian input with covariance `cxx` (arcsine law):
///   C_yy = (2/pi) [asin(Re S) + j asin(Im S)],  S = D^-1/2 cxx D^-1/2.
/// Only the upper triangle is evaluated; the result is exactly Hermitian
/// with unit diagonal.
template <typename Derived>
auto arcsine_covariance(const Eigen::MatrixBase<Derived>& cxx_expr) {
  using Real = typename Derived::Scalar::value_type;
  const CMatrix<Real> cxx = cxx_expr;
  const auto d = detail::checked_diagonal(cxx);
  const Eigen::Matrix<Real, Eigen::Dynamic, 1> inv_sd = d.cwiseSqrt().cwiseInverse();
  const Real two_over_pi = Real(2) / std::numbers::pi_v<Real>;
  const Eigen::Index n = cxx.rows();
  CMatrix<Real> out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const std::complex<Real> rho = cxx(i, j) * (inv_sd(i) * inv_sd(j));
      const std::complex<Real> v(two_over_pi * detail::clamped_asin(rho.real()),
                                 two_over_pi * detail::clamped_asin(rho.imag()));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
    out(j, j) = Real(1);
  }
  return out;
}

/// Bussgang gain and quantization-noise covariance
/// C_qq = C_yy - A cxx A for a one-bit quantizer fed with covariance `cxx`.
template <typename Derived>
auto quantization_noise_covariance(const Eigen::MatrixBase<Derived>& cxx_expr) {
  using Real = typename Derived::Scalar::value_type;
  const CMatrix<Real> cxx = cxx_expr;
  BasicBussgangModel<Real> model;
  model.alpha = bussgang_gain(detail::checked_diagonal(cxx));
  model.c_qq = arcsine_covariance(cxx);
  const Eigen::Index n = cxx.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const std::complex<Real> v = model.c_qq(i, j) - model.alpha(i) * model.alpha(j) * cxx(i, j);
      model.c_qq(i, j) = v;
      model.c_qq(j, i) = std::conj(v);
    }
    model.c_qq(j, j) = model.c_qq(j, j).real() - model.alpha(j) * model.alpha(j) * cxx(j, j).real();
  }
  return model;
}

}  // namespace onebit

#endif  // ONEBIT_QUANTIZER_HPP
