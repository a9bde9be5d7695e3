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

#ifndef ENTMETER_STATE_MEASURES_HPP
#define ENTMETER_STATE_MEASURES_HPP

#include "entmeter/operators.hpp"
#include "entmeter/sdp/solver.hpp"

namespace entmeter {

/// Named measure value in log2 units together with the raw optima of the
/// underlying program(s).  For measures with two independent SDP forms,
/// primal_value/dual_value hold the two separately solved optima; otherwise
/// they are the conic solver's primal/dual certificate pair.
struct MeasureReport {
  std::string measure_name;
  double value = 0.0;  // bits
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  std::map<std::string, HermitianOperator> witness;
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  int iterations = 0;
  int numerical_rank = -1;   // support rank used, when relevant
  bool lower_bound_only = false;
};

struct MeasureOptions {
  sdp::SolverOptions solver;
  double rank_tol = tol::kRank;
  /// Solve the paired SDP form as an independent cross-check where one
  /// exists (slower; populates primal_value/dual_value from separate runs).
  bool cross_check = false;
  /// Degenerate instances can stall short of the requested tolerances; on a
  /// numerical failure the solve is retried with both tolerances relaxed
  /// tenfold, down to this floor.  Zero disables retries.
  double tolerance_floor = 1e-6;
};

/// sdp::solve with the retry policy above.
sdp::SdpSolution solve_measure_program(const sdp::SdpProblem& p,
                                       const MeasureOptions& opts);

/// min eig of T_B(rho) >= -tol.
bool is_ppt(const DensityOperator& rho, double tol = tol::kPsd);
/// sigma >= -tol and ||T_B(sigma)||_1 <= 1 + tol.
bool is_ppt_prime(const HermitianOperator& sigma, double tol = tol::kPsd);

/// E_N = log2 ||T_B(rho)||_1, computed spectrally; the primal/dual SDP pair
/// is solved as a consistency check when cross_check is set.
MeasureReport log_negativity_state(const DensityOperator& rho,
                                   const MeasureOptions& opts = {});

/// R_max = log2 W with W = min Tr[C+D] over C,D >= 0, T_B(C-D) >= rho.
MeasureReport max_rains_state(const DensityOperator& rho,
                              const MeasureOptions& opts = {});

/// E_kappa = log2 min Tr S over S >= 0 with -T_B(S) <= T_B(rho) <= T_B(S).
MeasureReport kappa_entanglement_state(const DensityOperator& rho,
                                       const MeasureOptions& opts = {});

/// E_M = -log2 inf ||T_B(R)||_inf over R >= P (support projector of rho).
MeasureReport min_rains_state(const DensityOperator& rho,
                              const MeasureOptions& opts = {});

/// -log2 W0 with W0 = inf ||T_B(R)||_inf over P <= R <= I.
MeasureReport one_shot_exact_distillable(const DensityOperator& rho,
                                         const MeasureOptions& opts = {});

}  // namespace entmeter

#endif  // ENTMETER_STATE_MEASURES_HPP
