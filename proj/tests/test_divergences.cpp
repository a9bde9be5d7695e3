// Copyright 2026 The entmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "entmeter/divergences.hpp"

using namespace entmeter;

namespace {

Matrix random_density(int d, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix rho = m * m.adjoint();
  return hermitize(rho / rho.trace().real());
}

// Independent oracle for D(rho||sigma): spell out the eigendecompositions
// and sum rho-weighted log differences directly.
double relative_entropy_oracle(const Matrix& rho, const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> er(rho), es(sigma);
  double acc = 0.0;
  for (int i = 0; i < rho.rows(); ++i) {
    const double p = er.eigenvalues()(i);
    if (p <= 1e-14) continue;
    acc += p * std::log2(p);
    for (int j = 0; j < sigma.rows(); ++j) {
      const double q = es.eigenvalues()(j);
      if (q <= 1e-14) continue;
      const double overlap =
          std::norm(er.eigenvectors().col(i).dot(es.eigenvectors().col(j)));
      acc -= p * overlap * std::log2(q);
    }
  }
  return acc;
}

// Independent oracle for D_max: bisection on the smallest lambda with
// 2^lambda sigma - rho >= 0.
double dmax_oracle(const Matrix& rho, const Matrix& sigma) {
  auto feasible = [&](double lam) {
    return min_eigenvalue(Matrix(std::exp2(lam) * sigma - rho)) >= -1e-13;
  };
  double lo = -60, hi = 60;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

Matrix bell2() {
  Vector u = unnormalized_max_ent(2);
  return Matrix(u * u.adjoint() / 2.0);
}

}  // namespace

TEST_CASE("entropy basics") {
  for (int d : {2, 3, 4}) {
    DensityOperator pi = maximally_mixed(SystemLayout::single("A", d));
    CHECK(entropy(pi) == doctest::Approx(std::log2(double(d))).epsilon(1e-12));
  }
  DensityOperator phi = maximally_entangled(2);
  CHECK(entropy(phi) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(coherent_information(phi) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("conditional entropy of a product splits") {
  std::mt19937_64 rng(11);
  Matrix ra = random_density(2, 2, rng);
  Matrix sb = random_density(3, 3, rng);
  HermitianOperator a(SystemLayout::single("A", 2), ra);
  HermitianOperator b(SystemLayout::single("B", 3), sb);
  DensityOperator rho(tensor(a, b).with_b_side({"B"}));
  CHECK(conditional_entropy(rho, "B") ==
        doctest::Approx(entropy(ra)).epsilon(1e-9));
}

TEST_CASE("relative entropy against the eigen-decomposition oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix rho = random_density(4, 4, rng);
    Matrix sig = random_density(4, 4, rng);
    DivergenceValue v = relative_entropy(rho, sig);
    CHECK(!v.support_violation);
    CHECK(v.value ==
          doctest::Approx(relative_entropy_oracle(rho, sig)).epsilon(1e-8));
  }
}

TEST_CASE("relative entropy special values") {
  std::mt19937_64 rng(13);
  Matrix rho = random_density(3, 3, rng);
  CHECK(relative_entropy(rho, rho).value == doctest::Approx(0.0).epsilon(1e-9));

  Matrix phi = bell2();
  Matrix pi4 = 0.25 * Matrix::Identity(4, 4);
  // log2 d^2 for a maximally entangled state against the maximally mixed one
  DivergenceValue v = relative_entropy(phi, pi4);
  CHECK(v.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(v.value ==
        doctest::Approx(relative_entropy_oracle(phi, pi4)).epsilon(1e-10));

  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  DivergenceValue inf = relative_entropy(p0, p1);
  CHECK(inf.is_infinite());
  CHECK(inf.support_violation);
}

TEST_CASE("max-relative entropy matches the bisection oracle") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix rho = random_density(4, 4, rng);
    Matrix sig = random_density(4, 4, rng);
    CHECK(max_relative_entropy(rho, sig).value ==
          doctest::Approx(dmax_oracle(rho, sig)).epsilon(1e-7));
  }
  Matrix rho = random_density(3, 3, rng);
  CHECK(max_relative_entropy(rho, rho).value ==
        doctest::Approx(0.0).epsilon(1e-9));

  // 1 <= 2^lambda / 4 forces lambda = 2
  CHECK(max_relative_entropy(bell2(), Matrix(0.25 * Matrix::Identity(4, 4)))
            .value == doctest::Approx(2.0).epsilon(1e-10));

  Matrix pi2 = 0.5 * Matrix::Identity(2, 2);
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  CHECK(max_relative_entropy(pi2, p0).is_infinite());
}

TEST_CASE("sandwiched Renyi divergence") {
  std::mt19937_64 rng(15);
  Matrix rho = random_density(3, 3, rng);
  for (double alpha : {0.5, 2.0, 64.0}) {
    CHECK(sandwiched_renyi(rho, rho, alpha).value ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sandwiched_renyi(rho, rho, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sandwiched_renyi(rho, rho, 0.0), std::invalid_argument);

  // pure state against the maximally mixed one: alpha-independent value 2,
  // checked against direct matrix powers at alpha = 2
  Matrix phi = bell2();
  Matrix pi4 = 0.25 * Matrix::Identity(4, 4);
  Matrix core = hermitize(psd_power(pi4, -0.25) * phi * psd_power(pi4, -0.25));
  const double direct = std::log2((core * core).trace().real());
  CHECK(sandwiched_renyi(phi, pi4, 2.0).value ==
        doctest::Approx(direct).epsilon(1e-10));
  CHECK(direct == doctest::Approx(2.0).epsilon(1e-10));

  // support violation only matters above alpha = 1
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  CHECK(sandwiched_renyi(p0, p1, 2.0).is_infinite());
  CHECK(sandwiched_renyi(p0, p1, 0.5).is_infinite());  // orthogonal supports
}

TEST_CASE("monotonicity in alpha up to the max-relative entropy") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix rho = random_density(4, 4, rng);
    Matrix sig = random_density(4, 4, rng);
    const double a = sandwiched_renyi(rho, sig, 0.5).value;
    const double b = sandwiched_renyi(rho, sig, 2.0).value;
    const double c = sandwiched_renyi(rho, sig, 64.0).value;
    const double m = max_relative_entropy(rho, sig).value;
    CHECK(a <= b + 1e-6);
    CHECK(b <= c + 1e-6);
    CHECK(c <= m + 1e-6);
  }
}

TEST_CASE("alpha limits") {
  std::mt19937_64 rng(17);
  Matrix rho = random_density(3, 3, rng);
  Matrix sig = random_density(3, 3, rng);
  const double d1 = relative_entropy(rho, sig).value;
  CHECK(std::abs(sandwiched_renyi(rho, sig, 1.0 + 1e-4).value - d1) < 1e-2);
  CHECK(std::abs(sandwiched_renyi(rho, sig, 1.0 - 1e-4).value - d1) < 1e-2);

  const double dm = max_relative_entropy(rho, sig).value;
  double prev = -1e9;
  for (double alpha : {4.0, 64.0, 1024.0, 16384.0}) {
    const double v = sandwiched_renyi(rho, sig, alpha).value;
    CHECK(v >= prev - 1e-9);  // increases toward the limit
    prev = v;
  }
  CHECK(dm - prev < 1e-3);
  CHECK(prev <= dm + 1e-9);
}
