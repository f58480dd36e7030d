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

#include <doctest.h>

#include "onebit/numerics.hpp"

#include <atomic>
#include <cmath>

using namespace onebit;

TEST_CASE("sample_cn - degenerate shapes and variance") {
  const ComplexMatrix z = sample_cn(3, 4, 0.0, RandomStream{1, 0});
  CHECK(z.rows() == 3);
  CHECK(z.cols() == 4);
  CHECK(z.isZero(0.0));

  const ComplexMatrix empty = sample_cn(0, 5, 1.0, RandomStream{1, 0});
  CHECK(empty.size() == 0);

  CHECK_THROWS_AS(sample_cn(2, 2, -1.0, RandomStream{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_cn(2, 2, std::nan(""), RandomStream{1, 0}), std::invalid_argument);
}

TEST_CASE("sample_cn - second moment and circular symmetry") {
  constexpr Eigen::Index n = 100000;
  for (double variance : {1.0, 0.25}) {
    const ComplexMatrix z = sample_cn(n, 1, variance, RandomStream{11, 2});
    std::vector<double> power(n);
    std::vector<double> pseudo_re(n);
    std::vector<double> pseudo_im(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      power[i] = std::norm(z(i, 0));
      const auto zz = z(i, 0) * z(i, 0);
      pseudo_re[i] = zz.real();
      pseudo_im[i] = zz.imag();
    }
    const MeanEstimate p = estimate_mean(power);
    CHECK(std::abs(p.mean - variance) < 0.01 * variance);
    CHECK(std::abs(p.mean - variance) < 3.0 * p.stderr_of_mean);

    const MeanEstimate re = estimate_mean(pseudo_re);
    const MeanEstimate im = estimate_mean(pseudo_im);
    CHECK(std::abs(re.mean) < 3.0 * re.stderr_of_mean);
    CHECK(std::abs(im.mean) < 3.0 * im.stderr_of_mean);
  }
}

TEST_CASE("RandomStream - determinism and substreams") {
  const RandomStream s{7, 3};
  const ComplexMatrix a = sample_cn(5, 6, 1.0, s);
  const ComplexMatrix b = sample_cn(5, 6, 1.0, s);
  CHECK((a.array() == b.array()).all());

  const ComplexMatrix c = sample_cn(5, 6, 1.0, RandomStream{7, 4});
  CHECK_FALSE((a.array() == c.array()).all());
  const ComplexMatrix d = sample_cn(5, 6, 1.0, RandomStream{8, 3});
  CHECK_FALSE((a.array() == d.array()).all());

  CHECK(s.substream(5) == s.substream(5));
  CHECK_FALSE(s.substream(5) == s.substream(6));
  CHECK_FALSE(s.substream(0) == s);
}

TEST_CASE("RandomStream - distinct substreams are uncorrelated") {
  constexpr Eigen::Index n = 50000;
  const RandomStream base{42, 0};
  const ComplexMatrix a = sample_cn(n, 1, 1.0, base.substream(0));
  const ComplexMatrix b = sample_cn(n, 1, 1.0, base.substream(1));
  std::vector<double> re(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    re[i] = (a(i, 0) * std::conj(b(i, 0))).real();
  }
  const MeanEstimate e = estimate_mean(re);
  CHECK(std::abs(e.mean) < 3.0 * e.stderr_of_mean);
}

TEST_CASE("kron - identity and scalar cases") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  CHECK(kron(i2, i3).isApprox(ComplexMatrix::Identity(6, 6)));

  ComplexMatrix two(1, 1);
  two(0, 0) = 2.0;
  const ComplexMatrix b = sample_cn(3, 2, 1.0, RandomStream{3, 0});
  CHECK(kron(two, b).isApprox(2.0 * b));

  const ComplexMatrix a = sample_cn(2, 3, 1.0, RandomStream{3, 1});
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
}

TEST_CASE("kron and vec - (B^T kron A) vec(X) = vec(A X B) by direct expansion") {
  Rng rng = RandomStream{5, 0}.engine();
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix a = sample_cn(2, 2, 1.0, rng);
    const ComplexMatrix x = sample_cn(2, 2, 1.0, rng);
    const ComplexMatrix b = sample_cn(2, 2, 1.0, rng);

    // Element-by-element expansion of A X B.
    ComplexMatrix axb = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int p = 0; p < 2; ++p) {
          for (int q = 0; q < 2; ++q) {
            axb(i, j) += a(i, p) * x(p, q) * b(q, j);
          }
        }
      }
    }
    const ComplexVector lhs = kron(b.transpose(), a) * vec(x);
    CHECK((lhs - vec(axb)).norm() < 1e-12);
  }
}

TEST_CASE("kron - mixed-product identity") {
  Rng rng = RandomStream{9, 0}.engine();
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = sample_cn(2, 3, 1.0, rng);
    const ComplexMatrix b = sample_cn(3, 2, 1.0, rng);
    const ComplexMatrix c = sample_cn(3, 2, 1.0, rng);
    const ComplexMatrix d = sample_cn(2, 4, 1.0, rng);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron(ComplexMatrix(a * c), ComplexMatrix(b * d));
    CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("vec / unvec - column-major stacking") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 3, 2, 4;
  const Eigen::VectorXd v = vec(a);
  CHECK(v.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(v(i) == doctest::Approx(i + 1.0));
  }

  const ComplexMatrix r = sample_cn(4, 3, 1.0, RandomStream{2, 0});
  const ComplexMatrix back = unvec(vec(r), 4, 3);
  CHECK((back.array() == r.array()).all());

  ComplexMatrix one(1, 1);
  one(0, 0) = {2.0, -1.0};
  CHECK(vec(one)(0) == one(0, 0));

  CHECK_THROWS_AS(unvec(vec(r), 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(unvec(vec(r), 3, 3), std::invalid_argument);
}

TEST_CASE("CompensatedSum - recovers cancelled low-order terms") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("estimate_mean - known sample") {
  const MeanEstimate e = estimate_mean({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == doctest::Approx(2.5));
  // sample sd = sqrt(5/3), se = sd / 2
  CHECK(e.stderr_of_mean == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(estimate_mean({}).count == 0);
}

TEST_CASE("parallel_for - identical results for any worker count, errors propagate") {
  std::vector<double> one(97);
  std::vector<double> many(97);
  const auto work = [](std::vector<double>& out) {
    return [&out](std::size_t i) {
      out[i] = sample_cn(3, 3, 1.0, RandomStream{1, 0}.substream(i)).norm();
    };
  };
  parallel_for(one.size(), 1, work(one));
  parallel_for(many.size(), 4, work(many));
  CHECK(one == many);

  std::atomic<int> calls{0};
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [&calls](std::size_t i) {
                                 ++calls;
                                 if (i == 7) {
                                   throw std::runtime_error("boom");
                                 }
                               }),
                  std::runtime_error);
}
