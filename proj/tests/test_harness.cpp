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

#include <cstdlib>
#include <sstream>

#include "entmeter/harness.hpp"
#include "entmeter/parallel.hpp"

using namespace entmeter;
using namespace entmeter::harness;

namespace {

// realignment criterion: ||R(rho)||_1 > 1 certifies entanglement, also for
// PPT states; R(rho)[(i,j),(k,l)] = rho[(i,k),(j,l)]
double realignment_norm(const Matrix& rho, int da, int db) {
  Matrix r(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          r(i * da + j, k * db + l) = rho(i * db + k, j * db + l);
  Eigen::JacobiSVD<Matrix> svd(r);
  return svd.singularValues().sum();
}

}  // namespace

TEST_CASE("random state generators") {
  SystemLayout lay({{"A", 2}, {"B", 2}}, {"B"});
  DensityOperator pure = random_pure(lay, 5);
  CHECK((pure.mat() * pure.mat()).trace().real() ==
        doctest::Approx(1.0).epsilon(1e-10));

  DensityOperator a = random_state(lay, 3, 6);
  DensityOperator b = random_state(lay, 3, 6);
  CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);  // seed-stable
  CHECK(support_rank(a.mat()) == 3);

  CHECK_THROWS_AS(random_state(lay, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_state(lay, 5, 1), std::invalid_argument);
}

TEST_CASE("PPT generators stay PPT") {
  SystemLayout lay({{"A", 2}, {"B", 2}}, {"B"});
  for (int t = 0; t < 10; ++t) {
    CHECK(is_ppt(random_ppt_state(lay, 100 + t), 1e-9));
  }
}

TEST_CASE("the 3x3 stress state is PPT yet entangled") {
  DensityOperator rho = ppt_entangled_3x3(3);
  CHECK(is_ppt(rho, 1e-9));
  CHECK(realignment_norm(rho.mat(), 3, 3) > 1.0 + 1e-3);
}

TEST_CASE("suite registry") {
  auto suites = suite_names();
  for (const char* expect :
       {"operators", "channels", "divergences", "bell", "faithfulness",
        "pd-agreement", "ordering", "reduction", "additivity",
        "subadditivity", "superchannel", "amortization", "boundchain", "all"}) {
    CHECK(std::find(suites.begin(), suites.end(), expect) != suites.end());
  }
  CHECK(properties_in("amortization").size() == 2);
  CHECK_THROWS_AS(properties_in("no-such-suite"), std::invalid_argument);
}

TEST_CASE("trial counts and slack are validated") {
  SuiteConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(run_property("pt-self-adjoint", cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.slack = 0.0;
  CHECK_THROWS_AS(run_property("pt-self-adjoint", cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_property("no-such-property", SuiteConfig{}),
                  std::invalid_argument);
}

TEST_CASE("deterministic under a fixed seed") {
  SuiteConfig cfg;
  cfg.trials = 4;
  cfg.seed = 99;
  PropertyResult r1 = run_property("ordering-chain", cfg);
  PropertyResult r2 = run_property("ordering-chain", cfg);
  CHECK(r1.failures == r2.failures);
  CHECK(r1.worst_margin == r2.worst_margin);
  CHECK(r1.failures == 0);
}

TEST_CASE("cheap suites pass with the default slack") {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.seed = 7;
  for (const char* suite : {"operators", "channels", "divergences"}) {
    SuiteReport rep = run_suite(suite, cfg);
    INFO(std::string(suite));
    CHECK(rep.total_failures() == 0);
  }
}

TEST_CASE("an injected violation is reported with a witness") {
  SuiteConfig cfg;
  cfg.trials = 2;
  cfg.seed = 3;
  cfg.slack = 1e-6;
  // mislabel the swap channel as C-PPT-P: faithfulness must now fail
  cfg.cpptp_source = [](const ChannelDims& d, std::uint64_t) {
    if (d.in_a != d.out_a || d.in_b != d.out_b)
      return random_cpptp(d, 1);  // memory-carrying processors stay honest
    return choi_of(
        [](const Matrix& x) {
          Matrix s = Matrix::Zero(4, 4);
          s(0, 0) = s(3, 3) = 1;
          s(1, 2) = s(2, 1) = 1;
          return Matrix(s * x * s.adjoint());
        },
        d);
  };
  PropertyResult res = run_property("faithfulness-cpptp-channels", cfg);
  CHECK(res.failures == cfg.trials);
  CHECK(res.worst_margin < 0);
  REQUIRE(!res.failure_witnesses.empty());
  CHECK(res.failure_witnesses[0].find("seed") != std::string::npos);
}

TEST_CASE("ENTMETER_THREADS caps the worker count") {
  ::setenv("ENTMETER_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  ::unsetenv("ENTMETER_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("local product channels cannot raise the state measures") {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.seed = 21;
  cfg.slack = 1e-6;
  PropertyResult res = run_property("state-measure-monotone", cfg);
  CHECK(res.failures == 0);
}

TEST_CASE("report serialization is line oriented") {
  SuiteConfig cfg;
  cfg.trials = 2;
  SuiteReport rep = run_suite("operators", cfg);
  std::ostringstream os;
  rep.write(os);
  const std::string text = os.str();
  CHECK(text.find("property pt-self-adjoint anchor") != std::string::npos);
  CHECK(text.find("trials 2 failures 0") != std::string::npos);
}

TEST_CASE("failure witnesses reproduce the violation") {
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.cpptp_source = [](const ChannelDims& d, std::uint64_t) {
    return choi_of(
        [](const Matrix& x) {
          Matrix s = Matrix::Zero(4, 4);
          s(0, 0) = s(3, 3) = 1;
          s(1, 2) = s(2, 1) = 1;
          return Matrix(s * x * s.adjoint());
        },
        d);
  };
  PropertyResult first = run_property("faithfulness-cpptp-channels", cfg);
  PropertyResult second = run_property("faithfulness-cpptp-channels", cfg);
  REQUIRE(first.failures > 0);
  CHECK(first.failure_witnesses == second.failure_witnesses);
}
