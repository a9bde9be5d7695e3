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

#include "entmeter/state_measures.hpp"

#include <cmath>

namespace entmeter {

namespace sdpns = entmeter::sdp;

sdpns::SdpSolution solve_measure_program(const sdpns::SdpProblem& p,
                                         const MeasureOptions& opts) {
  sdpns::SolverOptions so = opts.solver;
  for (;;) {
    sdpns::SdpSolution sol = sdpns::solve(p, so);
    if (sol.status != sdpns::SolveStatus::NumericalFailure) return sol;
    const double gap = so.gap_tol * 10.0;
    const double feas = so.feas_tol * 10.0;
    if (opts.tolerance_floor <= 0 || gap > opts.tolerance_floor ||
        feas > opts.tolerance_floor)
      return sol;
    so.gap_tol = gap;
    so.feas_tol = feas;
  }
}

namespace {

std::vector<std::string> b_labels(const SystemLayout& layout) {
  if (layout.b_side().empty())
    throw std::invalid_argument("state measure: layout has an empty b side");
  return layout.b_side();
}

void absorb_solution(MeasureReport& rep, const sdpns::SdpSolution& sol) {
  rep.status = sol.status;
  rep.iterations = sol.iterations;
  rep.primal_value = sol.primal_value;
  rep.dual_value = sol.dual_value;
  rep.gap = sol.gap;
  rep.witness = sol.variable_values;
}

void require_optimal(const MeasureReport& rep) {
  if (rep.status != sdpns::SolveStatus::Optimal)
    throw sdpns::SolverError("measure '" + rep.measure_name +
                             "': solver returned " +
                             sdpns::to_string(rep.status));
}

}  // namespace

bool is_ppt(const DensityOperator& rho, double tol) {
  auto labels = b_labels(rho.layout());
  HermitianOperator t =
      partial_transpose(rho.op(), std::span<const std::string>(labels));
  return min_eigenvalue(t.mat()) >= -tol;
}

bool is_ppt_prime(const HermitianOperator& sigma, double tol) {
  auto labels = b_labels(sigma.layout());
  if (min_eigenvalue(sigma.mat()) < -tol) return false;
  HermitianOperator t =
      partial_transpose(sigma, std::span<const std::string>(labels));
  return trace_norm(t.mat()) <= 1.0 + tol;
}

MeasureReport log_negativity_state(const DensityOperator& rho,
                                   const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "en-state";
  const auto labels = b_labels(rho.layout());
  const SystemLayout& lay = rho.layout();
  const int d = rho.dim();

  // spectral reference value
  HermitianOperator tb =
      partial_transpose(rho.op(), std::span<const std::string>(labels));
  const double norm1 = trace_norm(tb.mat());
  rep.value = std::log2(norm1);
  rep.status = sdpns::SolveStatus::Optimal;
  rep.primal_value = norm1;
  rep.dual_value = norm1;
  rep.gap = 0.0;

  if (!opts.cross_check) return rep;

  // primal: sup Tr[R rho] with -I <= T_B(R) <= I, R Hermitian
  {
    sdpns::SdpProblem p;
    auto rv = p.add_variable("R", lay, sdpns::VarCone::HermitianFree);
    sdpns::OperatorExpr tr = sdpns::pt(p.expr(rv), labels);
    HermitianOperator id = HermitianOperator::identity(lay);
    p.add_psd_constraint(sdpns::OperatorExpr::constant(id) - tr);
    p.add_psd_constraint(sdpns::OperatorExpr::constant(id) + tr);
    p.set_objective(sdpns::Sense::Maximize, rv, rho.mat());
    sdpns::SdpSolution sol = solve_measure_program(p, opts);
    if (sol.status != sdpns::SolveStatus::Optimal)
      throw sdpns::SolverError("en-state primal: solver returned " +
                               sdpns::to_string(sol.status));
    rep.primal_value = sol.primal_value;
    rep.witness.insert(sol.variable_values.begin(), sol.variable_values.end());
    rep.iterations = sol.iterations;
  }
  // dual: inf Tr[K+L] with T_B(K-L) = rho
  {
    sdpns::SdpProblem p;
    auto kv = p.add_variable("K", lay, sdpns::VarCone::HermitianPsd);
    auto lv = p.add_variable("L", lay, sdpns::VarCone::HermitianPsd);
    p.add_eq_constraint(sdpns::pt(p.expr(kv) - p.expr(lv), labels) - rho.op());
    p.set_objective(sdpns::Sense::Minimize,
                    {{kv.index, Matrix::Identity(d, d)},
                     {lv.index, Matrix::Identity(d, d)}});
    sdpns::SdpSolution sol = solve_measure_program(p, opts);
    if (sol.status != sdpns::SolveStatus::Optimal)
      throw sdpns::SolverError("en-state dual: solver returned " +
                               sdpns::to_string(sol.status));
    rep.dual_value = sol.primal_value;
    rep.witness.insert(sol.variable_values.begin(), sol.variable_values.end());
  }
  rep.gap = std::abs(rep.primal_value - rep.dual_value);
  return rep;
}

MeasureReport max_rains_state(const DensityOperator& rho,
                              const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "rmax-state";
  const auto labels = b_labels(rho.layout());
  const SystemLayout& lay = rho.layout();
  const int d = rho.dim();

  sdpns::SdpProblem p;
  auto cv = p.add_variable("C", lay, sdpns::VarCone::HermitianPsd);
  auto dv = p.add_variable("D", lay, sdpns::VarCone::HermitianPsd);
  p.add_psd_constraint(sdpns::pt(p.expr(cv) - p.expr(dv), labels) - rho.op());
  p.set_objective(sdpns::Sense::Minimize,
                  {{cv.index, Matrix::Identity(d, d)},
                   {dv.index, Matrix::Identity(d, d)}});
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb_solution(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);

  if (opts.cross_check) {
    // sup Tr[R rho] with R >= 0 and -I <= T_B(R) <= I
    sdpns::SdpProblem q;
    auto rv = q.add_variable("R", lay, sdpns::VarCone::HermitianPsd);
    sdpns::OperatorExpr tr = sdpns::pt(q.expr(rv), labels);
    HermitianOperator id = HermitianOperator::identity(lay);
    q.add_psd_constraint(sdpns::OperatorExpr::constant(id) - tr);
    q.add_psd_constraint(sdpns::OperatorExpr::constant(id) + tr);
    q.set_objective(sdpns::Sense::Maximize, rv, rho.mat());
    sdpns::SdpSolution qs = solve_measure_program(q, opts);
    if (qs.status != sdpns::SolveStatus::Optimal)
      throw sdpns::SolverError("rmax-state primal: solver returned " +
                               sdpns::to_string(qs.status));
    rep.dual_value = sol.primal_value;
    rep.primal_value = qs.primal_value;
    rep.gap = std::abs(rep.primal_value - rep.dual_value);
    rep.witness.insert(qs.variable_values.begin(), qs.variable_values.end());
  }
  return rep;
}

MeasureReport kappa_entanglement_state(const DensityOperator& rho,
                                       const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "kappa-state";
  const auto labels = b_labels(rho.layout());
  const SystemLayout& lay = rho.layout();
  const int d = rho.dim();

  HermitianOperator trho =
      partial_transpose(rho.op(), std::span<const std::string>(labels));
  sdpns::SdpProblem p;
  auto sv = p.add_variable("S", lay, sdpns::VarCone::HermitianPsd);
  sdpns::OperatorExpr ts = sdpns::pt(p.expr(sv), labels);
  p.add_psd_constraint(ts - trho);
  p.add_psd_constraint(ts + trho);
  p.set_objective(sdpns::Sense::Minimize, sv, Matrix::Identity(d, d));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb_solution(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);
  return rep;
}

namespace {

MeasureReport transpose_norm_program(const DensityOperator& rho,
                                     const MeasureOptions& opts, bool cap_by_i,
                                     const std::string& name) {
  MeasureReport rep;
  rep.measure_name = name;
  const auto labels = b_labels(rho.layout());
  const SystemLayout& lay = rho.layout();

  HermitianOperator proj = support_projector(rho, opts.rank_tol);
  rep.numerical_rank = support_rank(rho.mat(), opts.rank_tol);

  sdpns::SdpProblem p;
  auto rv = p.add_variable("R", lay, sdpns::VarCone::HermitianFree);
  p.add_psd_constraint(p.expr(rv) - proj);  // R >= P
  if (cap_by_i)
    p.add_psd_constraint(
        sdpns::OperatorExpr::constant(HermitianOperator::identity(lay)) -
        p.expr(rv));
  auto tv =
      sdpns::inf_norm_epigraph(p, sdpns::pt(p.expr(rv), labels), false, "t");
  p.set_objective(sdpns::Sense::Minimize, tv, Matrix::Identity(1, 1));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb_solution(rep, sol);
  require_optimal(rep);
  rep.value = -std::log2(sol.primal_value);
  return rep;
}

}  // namespace

MeasureReport min_rains_state(const DensityOperator& rho,
                              const MeasureOptions& opts) {
  return transpose_norm_program(rho, opts, false, "emin-state");
}

MeasureReport one_shot_exact_distillable(const DensityOperator& rho,
                                         const MeasureOptions& opts) {
  return transpose_norm_program(rho, opts, true, "w0-state");
}

}  // namespace entmeter
