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

#include "entmeter/channel_measures.hpp"

#include <cmath>

namespace entmeter {

namespace sdpns = entmeter::sdp;

namespace {

const std::vector<std::string> kTransposeSide = {kLabelB, kLabelSB};

void absorb(MeasureReport& rep, const sdpns::SdpSolution& sol) {
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

// sup-form SDP shared by E_N (Hermitian R, objective T(J)) and R_max
// (PSD X, objective J, transpose on the variable side):
//   sup Tr[G R] : rho >= 0, Tr rho <= 1 (or = 1),
//                 -rho (x) I <= M(R) <= rho (x) I
double sup_form_value(const CPMap& n, const Matrix& objective,
                      bool transpose_variable, bool trace_eq,
                      bool psd_variable, const MeasureOptions& opts,
                      const char* what,
                      std::map<std::string, HermitianOperator>* witness) {
  const SystemLayout& lay = n.choi().layout();
  SystemLayout side = lay.without(std::array<std::string, 2>{kLabelA, kLabelB});
  sdpns::SdpProblem p;
  auto rhov = p.add_variable("rho", side, sdpns::VarCone::HermitianPsd);
  auto rv = p.add_variable("X", lay,
                           psd_variable ? sdpns::VarCone::HermitianPsd
                                        : sdpns::VarCone::HermitianFree);
  sdpns::OperatorExpr rho_id = sdpns::embed(p.expr(rhov), lay);
  sdpns::OperatorExpr xr = transpose_variable
                               ? sdpns::pt(p.expr(rv), kTransposeSide)
                               : p.expr(rv);
  p.add_psd_constraint(rho_id - xr);
  p.add_psd_constraint(rho_id + xr);
  sdpns::OperatorExpr tr =
      sdpns::ptrace(p.expr(rhov), {side.factor(0).label, side.factor(1).label});
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  HermitianOperator one_op(SystemLayout::scalar(), one);
  if (trace_eq)
    p.add_eq_constraint(tr - one_op);
  else
    p.add_psd_constraint(sdpns::OperatorExpr::constant(one_op) - tr);
  p.set_objective(sdpns::Sense::Maximize, rv, objective);
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  if (sol.status != sdpns::SolveStatus::Optimal)
    throw sdpns::SolverError(std::string(what) + ": solver returned " +
                             sdpns::to_string(sol.status));
  if (witness)
    witness->insert(sol.variable_values.begin(), sol.variable_values.end());
  return sol.primal_value;
}

}  // namespace

MeasureReport log_negativity_channel(const CPMap& n, const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "en-channel";
  const SystemLayout& lay = n.choi().layout();

  sdpns::SdpProblem p;
  auto vv = p.add_variable("V", lay, sdpns::VarCone::HermitianPsd);
  auto yv = p.add_variable("Y", lay, sdpns::VarCone::HermitianPsd);
  p.add_eq_constraint(sdpns::pt(p.expr(vv) - p.expr(yv), kTransposeSide) -
                      n.choi());
  sdpns::OperatorExpr reduced =
      sdpns::ptrace(p.expr(vv) + p.expr(yv), {kLabelA, kLabelB});
  auto tv = sdpns::inf_norm_epigraph(p, reduced, /*psd_expr=*/true);
  p.set_objective(sdpns::Sense::Minimize, tv, Matrix::Identity(1, 1));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);

  if (opts.cross_check) {
    HermitianOperator tj = partial_transpose(
        n.choi(), std::span<const std::string>(kTransposeSide));
    const double sup = sup_form_value(n, tj.mat(), /*transpose_variable=*/false,
                                      /*trace_eq=*/false,
                                      /*psd_variable=*/false, opts,
                                      "en-channel primal", &rep.witness);
    rep.dual_value = sol.primal_value;
    rep.primal_value = sup;
    rep.gap = std::abs(rep.primal_value - rep.dual_value);
  }
  return rep;
}

MeasureReport max_rains_channel(const BipartiteChannel& n,
                                const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "rmax-channel";
  const SystemLayout& lay = n.choi().layout();

  sdpns::SdpProblem p;
  auto vv = p.add_variable("V", lay, sdpns::VarCone::HermitianPsd);
  auto yv = p.add_variable("Y", lay, sdpns::VarCone::HermitianPsd);
  p.add_psd_constraint(sdpns::pt(p.expr(vv) - p.expr(yv), kTransposeSide) -
                       n.choi());
  sdpns::OperatorExpr reduced =
      sdpns::ptrace(p.expr(vv) + p.expr(yv), {kLabelA, kLabelB});
  auto tv = sdpns::inf_norm_epigraph(p, reduced, /*psd_expr=*/true);
  p.set_objective(sdpns::Sense::Minimize, tv, Matrix::Identity(1, 1));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);

  if (opts.cross_check) {
    const double sup = sup_form_value(n, n.choi().mat(),
                                      /*transpose_variable=*/true,
                                      /*trace_eq=*/true,
                                      /*psd_variable=*/true, opts,
                                      "rmax-channel dual", &rep.witness);
    rep.dual_value = sol.primal_value;
    rep.primal_value = sup;
    rep.gap = std::abs(rep.primal_value - rep.dual_value);
  }
  return rep;
}

MeasureReport kappa_entanglement_channel(const BipartiteChannel& n,
                                         const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "kappa-channel";
  const SystemLayout& lay = n.choi().layout();

  HermitianOperator tj = partial_transpose(
      n.choi(), std::span<const std::string>(kTransposeSide));
  sdpns::SdpProblem p;
  auto qv = p.add_variable("Q", lay, sdpns::VarCone::HermitianPsd);
  sdpns::OperatorExpr tq = sdpns::pt(p.expr(qv), kTransposeSide);
  p.add_psd_constraint(tq - tj);
  p.add_psd_constraint(tq + tj);
  sdpns::OperatorExpr reduced = sdpns::ptrace(p.expr(qv), {kLabelA, kLabelB});
  auto tv = sdpns::inf_norm_epigraph(p, reduced, /*psd_expr=*/true);
  p.set_objective(sdpns::Sense::Minimize, tv, Matrix::Identity(1, 1));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);
  return rep;
}

MeasureReport kappa_entanglement_p2p(const Matrix& choi_lb, int in_dim,
                                     int out_dim, const MeasureOptions& opts) {
  MeasureReport rep;
  rep.measure_name = "kappa-p2p";
  SystemLayout lay({{"L", in_dim}, {"B", out_dim}}, {"B"});
  HermitianOperator j(lay, hermitize(choi_lb));
  HermitianOperator tj = partial_transpose(j, {"B"});

  sdpns::SdpProblem p;
  auto qv = p.add_variable("Q", lay, sdpns::VarCone::HermitianPsd);
  sdpns::OperatorExpr tq = sdpns::pt(p.expr(qv), {"B"});
  p.add_psd_constraint(tq - tj);
  p.add_psd_constraint(tq + tj);
  sdpns::OperatorExpr reduced = sdpns::ptrace(p.expr(qv), {"B"});
  auto tv = sdpns::inf_norm_epigraph(p, reduced, /*psd_expr=*/true);
  p.set_objective(sdpns::Sense::Minimize, tv, Matrix::Identity(1, 1));
  sdpns::SdpSolution sol = solve_measure_program(p, opts);
  absorb(rep, sol);
  require_optimal(rep);
  rep.value = std::log2(sol.primal_value);
  return rep;
}

MeasureReport min_rains_channel_lower(const Matrix& choi_lb, int in_dim,
                                      int out_dim, int samples, int restarts,
                                      std::uint64_t seed,
                                      const MeasureOptions& opts) {
  if (samples < 1)
    throw std::invalid_argument("min_rains_channel_lower: samples must be >= 1");
  MeasureReport rep;
  rep.measure_name = "emin-channel-lb";
  rep.lower_bound_only = true;
  rep.status = sdpns::SolveStatus::Optimal;

  BipartiteChannel chan = embed_point_to_point(choi_lb, in_dim, out_dim);
  SystemLayout in_lay(
      {{"R", in_dim}, {"Ain", in_dim}, {"Bin", 1}, {"T", 1}}, {"Bin", "T"});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;

  auto value_of = [&](const Vector& psi) {
    Matrix m = psi * psi.adjoint();
    DensityOperator in(HermitianOperator(in_lay, hermitize(m)));
    DensityOperator out = apply(chan, in);
    return min_rains_state(out, opts).value;
  };
  auto random_ket = [&]() {
    Vector v(in_dim * in_dim);
    for (int i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
    v.normalize();
    return v;
  };

  Vector best = unnormalized_max_ent(in_dim).normalized();
  double best_val = value_of(best);
  for (int s = 1; s < samples; ++s) {
    Vector cand = random_ket();
    const double v = value_of(cand);
    if (v > best_val) {
      best_val = v;
      best = cand;
    }
  }
  // local hill climb around the best sample
  double step = 0.3;
  for (int r = 0; r < restarts && step > 1e-3; ++r) {
    bool improved = false;
    for (int attempt = 0; attempt < 4; ++attempt) {
      Vector cand = best;
      for (int i = 0; i < cand.size(); ++i)
        cand(i) += step * Complex(g(rng), g(rng));
      cand.normalize();
      const double v = value_of(cand);
      if (v > best_val + 1e-10) {
        best_val = v;
        best = cand;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }

  rep.value = best_val;
  rep.primal_value = std::exp2(-best_val);
  rep.dual_value = rep.primal_value;
  rep.witness.emplace("input",
                      HermitianOperator(in_lay, best * best.adjoint()));
  return rep;
}

double amortized_kappa_gap(const BipartiteChannel& n, const DensityOperator& rho,
                           const MeasureOptions& opts) {
  DensityOperator omega = apply(n, rho);
  return kappa_entanglement_state(omega, opts).value -
         kappa_entanglement_state(rho, opts).value;
}

double amortized_max_rains_gap(const BipartiteChannel& n,
                               const DensityOperator& rho,
                               const MeasureOptions& opts) {
  DensityOperator omega = apply(n, rho);
  return max_rains_state(omega, opts).value -
         max_rains_state(rho, opts).value;
}

}  // namespace entmeter
