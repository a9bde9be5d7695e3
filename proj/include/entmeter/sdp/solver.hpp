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

#ifndef ENTMETER_SDP_SOLVER_HPP
#define ENTMETER_SDP_SOLVER_HPP

#include <map>
#include <string>

#include "entmeter/sdp/embed.hpp"

namespace entmeter::sdp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(SolveStatus s);

/// Thrown by measure computations when the backend does not reach an
/// optimal certificate.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  int refinement = 2;  // iterative refinement rounds per KKT solve
  bool verbose = false;
};

/// Raw result of the homogeneous self-dual interior-point run on a
/// RealConeProgram (minimizing form; no sense/constant adjustment).
struct ConeSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> s;
  std::vector<Eigen::MatrixXd> z;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;      // |primal - dual|
  double rel_gap = 0.0;  // gap / max(1, |primal|)
  double primal_res = 0.0;
  double dual_res = 0.0;
  int iterations = 0;
};

ConeSolution solve_cone_program(const RealConeProgram& prog,
                                const SolverOptions& opts = {});

struct SdpSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;      // |primal - dual|
  double rel_gap = 0.0;  // gap / max(1, |primal|)
  int iterations = 0;
  std::map<std::string, HermitianOperator> variable_values;
  // how equality constraints were realized: "nullspace-elimination" or "none"
  std::string equality_realization = "none";
};

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts = {});
SdpSolution solve(const SdpProblem& p, double gap_tol, double feas_tol,
                  int max_iter);

}  // namespace entmeter::sdp

#endif  // ENTMETER_SDP_SOLVER_HPP
