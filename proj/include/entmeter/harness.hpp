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

#ifndef ENTMETER_HARNESS_HPP
#define ENTMETER_HARNESS_HPP

#include <iosfwd>
#include <optional>

#include "entmeter/channel_measures.hpp"

namespace entmeter::harness {

// ---------------------------------------------------------------------------
// Generators (deterministic in the seed)

/// rho ~ G G^dagger / Tr, with G a d x rank complex Gaussian matrix.
DensityOperator random_state(const SystemLayout& layout, int rank,
                             std::uint64_t seed);
DensityOperator random_pure(const SystemLayout& layout, std::uint64_t seed);

/// Mixture of product states; separable by construction, hence PPT.
DensityOperator random_ppt_state(const SystemLayout& layout,
                                 std::uint64_t seed);

/// PPT-entangled 3x3 state: the tiles construction blended with a random
/// separable state, rejection-checked to stay PPT.
DensityOperator ppt_entangled_3x3(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig {
  std::uint64_t seed = 1;
  int trials = 10;
  int dim_a = 2;
  int dim_b = 2;
  double slack = 1e-5;
  sdp::SolverOptions solver;
  bool parallel = true;
  /// Override for the C-PPT-P channel source; used to inject violations in
  /// harness self-tests.
  std::function<BipartiteChannel(const ChannelDims&, std::uint64_t)>
      cpptp_source;
};

struct PropertyResult {
  std::string name;
  std::string anchor;  // stable identifier of the inequality family
  int trials = 0;
  int failures = 0;
  /// Smallest margin rhs + slack - lhs seen over all checks (negative means
  /// a violation of that magnitude).
  double worst_margin = 0.0;
  std::vector<std::string> failure_witnesses;
};

struct SuiteReport {
  std::vector<PropertyResult> properties;
  int total_failures() const;
  /// Line-delimited text: one property line, then one line per failure.
  void write(std::ostream& os) const;
};

/// Names of the registered property suites (groups of properties).
std::vector<std::string> suite_names();
/// Names of individual properties within a suite ("all" selects everything).
std::vector<std::string> properties_in(const std::string& suite);

/// Run one named property with the given configuration.
PropertyResult run_property(const std::string& name, const SuiteConfig& cfg);

/// Run every property of a named suite with cfg.trials trials each.
SuiteReport run_suite(const std::string& suite, const SuiteConfig& cfg);

}  // namespace entmeter::harness

#endif  // ENTMETER_HARNESS_HPP
