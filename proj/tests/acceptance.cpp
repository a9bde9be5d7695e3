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
//
// End-to-end acceptance battery.  Each criterion prints one PASS/FAIL line;
// the process exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "entmeter/harness.hpp"
#include "entmeter/parallel.hpp"

using namespace entmeter;
using harness::PropertyResult;
using harness::SuiteConfig;

namespace {

struct Criterion {
  int id;
  std::string label;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Criterion> g_results;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SuiteConfig base_config(std::uint64_t seed, int trials, double slack) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.slack = slack;
  return cfg;
}

// Runs a set of properties and aggregates failures and worst margins.
struct Batch {
  int failures = 0;
  double worst = 1e300;
  std::string notes;

  void add(const PropertyResult& r) {
    failures += r.failures;
    worst = std::min(worst, r.worst_margin);
    if (r.failures > 0) {
      notes += " " + r.name + ":" + std::to_string(r.failures) + "fail";
      if (!r.failure_witnesses.empty())
        notes += " [" + r.failure_witnesses.front() + "]";
    }
  }
};

void record(int id, const std::string& label, bool pass, double secs,
            const std::string& detail) {
  g_results.push_back({id, label, pass, secs, detail});
  std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", pass ? "PASS" : "FAIL",
              id, label.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("bell-battery", base_config(11, 3, 1e-6)));
  const double secs = seconds_since(t0);
  const bool in_time = secs < 5.0;
  char extra[128];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e%s", b.worst,
                in_time ? "" : ", runtime budget of 5 s exceeded");
  record(1, "maximally entangled battery, d in {2,3,4}, tol 1e-6",
         b.failures == 0 && in_time, secs, extra + b.notes);
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("faithfulness-ppt-states",
                              base_config(21, 50, 1e-6)));
  b.add(harness::run_property("faithfulness-cpptp-channels",
                              base_config(22, 20, 1e-6)));
  b.add(harness::run_property("identity-channel-unit",
                              base_config(23, 1, 1e-6)));
  const double secs = seconds_since(t0);
  const bool in_time = secs < 120.0;
  char extra[128];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e%s", b.worst,
                in_time ? "" : ", runtime budget of 2 min exceeded");
  record(2, "faithfulness: 50 PPT states, 20 C-PPT-P channels, identity = 1",
         b.failures == 0 && in_time, secs, extra + b.notes);
}

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("pd-agreement-state", base_config(31, 25, 1e-6)));
  b.add(harness::run_property("pd-agreement-channel",
                              base_config(32, 25, 1e-6)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(3, "primal/dual agreement on 25 instances per paired form",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("ordering-chain", base_config(41, 100, 1e-7)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(4, "ordering R_max <= E_N and -log2 W0 <= E_M on 100 states",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("reduction-to-states",
                              base_config(51, 50, 1e-6)));
  b.add(harness::run_property("kappa-p2p-reduction",
                              base_config(52, 10, 1e-6)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(5, "replacer channels reduce to state measures, 50 states",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("additivity-kappa", base_config(61, 25, 1e-5)));
  b.add(harness::run_property("additivity-min-rains",
                              base_config(62, 25, 1e-5)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(6, "kappa and min-Rains additivity on 25 pairs",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_7() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("subadditivity-rmax", base_config(71, 25, 1e-6)));
  b.add(harness::run_property("superchannel-monotone",
                              base_config(72, 25, 1e-6)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(7, "serial subadditivity and superchannel monotonicity, 25 each",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("amortization-kappa",
                              base_config(81, 100, 1e-5)));
  b.add(harness::run_property("amortization-rmax",
                              base_config(82, 100, 1e-5)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(8, "amortization bounds over 100 (channel, state) pairs",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("bound-chain-rmax", base_config(91, 25, 1e-5)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(9, "two-use distillation chain bounded by 2 R_max, 25 trials",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  Batch b;
  b.add(harness::run_property("divergence-data-processing",
                              base_config(101, 50, 1e-7)));
  b.add(harness::run_property("renyi-alpha-monotone",
                              base_config(102, 50, 1e-6)));
  b.add(harness::run_property("divergence-invariance",
                              base_config(103, 50, 1e-9)));
  b.add(harness::run_property("renyi-limits", base_config(104, 50, 1e-5)));
  char extra[64];
  std::snprintf(extra, sizeof(extra), "worst margin %.2e", b.worst);
  record(10, "divergence toolbox: data processing, monotonicity, limits",
         b.failures == 0, seconds_since(t0), extra + b.notes);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  std::printf("acceptance battery (%d worker threads)\n", worker_count());

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  int failed = 0;
  for (const auto& c : g_results)
    if (!c.pass) ++failed;
  const double total = seconds_since(t0);
  std::printf("summary: %d/%zu criteria passed, total %.1f s"
              " (reference target: 900 s on an 8-core machine)\n",
              static_cast<int>(g_results.size()) - failed, g_results.size(),
              total);
  return failed;
}
