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

#include "entmeter/divergences.hpp"

#include <cmath>
#include <limits>

namespace entmeter {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

DivergenceValue infinite_value() { return {kInf, true}; }
}  // namespace

double entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam > 0) s -= lam * std::log2(lam);
  }
  return s;
}

double entropy(const DensityOperator& rho) { return entropy(rho.mat()); }

double conditional_entropy(const DensityOperator& rho,
                           const std::string& given) {
  std::vector<std::string> rest;
  for (const auto& f : rho.layout().factors())
    if (f.label != given) rest.push_back(f.label);
  HermitianOperator marginal =
      partial_trace(rho.op(), std::span<const std::string>(rest));
  return entropy(rho.mat()) - entropy(marginal.mat());
}

double coherent_information(const DensityOperator& rho) {
  std::vector<std::string> a_side;
  for (const auto& f : rho.layout().factors())
    if (!rho.layout().on_b_side(f.label)) a_side.push_back(f.label);
  if (a_side.size() == rho.layout().factors().size())
    throw std::invalid_argument("coherent_information: empty b side");
  HermitianOperator rho_b =
      partial_trace(rho.op(), std::span<const std::string>(a_side));
  return entropy(rho_b.mat()) - entropy(rho.mat());
}

bool support_contained(const Matrix& rho, const Matrix& sigma,
                       double rank_tol) {
  Matrix p_sigma = support_projector(sigma, rank_tol);
  // rho lives inside supp(sigma) iff (I-P) rho (I-P) vanishes; since rho is
  // PSD it is enough to check the trace of the compression.
  Matrix q = Matrix::Identity(sigma.rows(), sigma.cols()) - p_sigma;
  const double leak = (q * rho * q).trace().real();
  return leak <= rank_tol * std::max(1.0, rho.trace().real());
}

DivergenceValue relative_entropy(const Matrix& rho, const Matrix& sigma,
                                 double rank_tol) {
  if (!support_contained(rho, sigma, rank_tol)) return infinite_value();
  const Matrix log_rho = support_log2(rho, rank_tol);
  const Matrix log_sigma = support_log2(sigma, rank_tol);
  const double v = (rho * (log_rho - log_sigma)).trace().real();
  return {v, false};
}

DivergenceValue relative_entropy(const DensityOperator& rho,
                                 const HermitianOperator& sigma,
                                 double rank_tol) {
  return relative_entropy(rho.mat(), sigma.mat(), rank_tol);
}

DivergenceValue max_relative_entropy(const Matrix& rho, const Matrix& sigma,
                                     double rank_tol) {
  if (!support_contained(rho, sigma, rank_tol)) return infinite_value();
  const Matrix isq = psd_power(sigma, -0.5, rank_tol);
  const double top = operator_norm(hermitize(isq * rho * isq));
  return {std::log2(std::max(top, 0.0)), false};
}

DivergenceValue max_relative_entropy(const DensityOperator& rho,
                                     const HermitianOperator& sigma,
                                     double rank_tol) {
  return max_relative_entropy(rho.mat(), sigma.mat(), rank_tol);
}

DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma,
                                 double alpha, double rank_tol) {
  if (alpha <= 0 || alpha == 1.0)
    throw std::invalid_argument(
        "sandwiched_renyi: alpha must lie in (0,1) u (1,inf)");
  if (alpha > 1 && !support_contained(rho, sigma, rank_tol))
    return infinite_value();

  const double p = (1.0 - alpha) / (2.0 * alpha);
  const Matrix sp = psd_power(sigma, p, rank_tol);
  const Matrix core = hermitize(sp * rho * sp);

  // Tr core^alpha via log-sum-exp over the eigenvalues; plain powers
  // underflow for large alpha.
  Eigen::SelfAdjointEigenSolver<Matrix> es(core, Eigen::EigenvaluesOnly);
  double lam_max = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    lam_max = std::max(lam_max, es.eigenvalues()(k));
  if (lam_max <= 0.0) return infinite_value();
  double acc = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam > 0) acc += std::pow(lam / lam_max, alpha);
  }
  const double log2_trace = alpha * std::log2(lam_max) + std::log2(acc);
  return {log2_trace / (alpha - 1.0), false};
}

DivergenceValue sandwiched_renyi(const DensityOperator& rho,
                                 const HermitianOperator& sigma, double alpha,
                                 double rank_tol) {
  return sandwiched_renyi(rho.mat(), sigma.mat(), alpha, rank_tol);
}

}  // namespace entmeter
