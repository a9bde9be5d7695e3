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

#ifndef ENTMETER_DIVERGENCES_HPP
#define ENTMETER_DIVERGENCES_HPP

#include <string>

#include "entmeter/operators.hpp"

namespace entmeter {

/// Extended-real divergence value in log2 units.  Infinite exactly when the
/// support condition fails (for the divergences that have one).
struct DivergenceValue {
  double value = 0.0;  // bits; may be +infinity
  bool support_violation = false;

  bool is_infinite() const { return std::isinf(value); }
};

/// von Neumann entropy, -Tr[rho log2 rho], with 0 log 0 := 0.
double entropy(const DensityOperator& rho);
double entropy(const Matrix& rho);

/// S(rest | given) = S(full) - S(given part).
double conditional_entropy(const DensityOperator& rho,
                           const std::string& given);

/// I(A>B) = S(B) - S(AB), with B the layout's b-side block.
double coherent_information(const DensityOperator& rho);

/// Umegaki relative entropy D(rho || sigma); +infinity when supp(rho) is not
/// contained in supp(sigma) (rank tolerance rank_tol).
DivergenceValue relative_entropy(const DensityOperator& rho,
                                 const HermitianOperator& sigma,
                                 double rank_tol = tol::kRank);
DivergenceValue relative_entropy(const Matrix& rho, const Matrix& sigma,
                                 double rank_tol = tol::kRank);

/// D_max(rho || sigma) = log2 || sigma^{-1/2} rho sigma^{-1/2} ||_inf
///                     = inf { lambda : rho <= 2^lambda sigma }.
DivergenceValue max_relative_entropy(const DensityOperator& rho,
                                     const HermitianOperator& sigma,
                                     double rank_tol = tol::kRank);
DivergenceValue max_relative_entropy(const Matrix& rho, const Matrix& sigma,
                                     double rank_tol = tol::kRank);

/// Sandwiched Renyi divergence of order alpha in (0,1) u (1,inf).
/// alpha = 1 is rejected; use relative_entropy.
DivergenceValue sandwiched_renyi(const DensityOperator& rho,
                                 const HermitianOperator& sigma, double alpha,
                                 double rank_tol = tol::kRank);
DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma,
                                 double alpha, double rank_tol = tol::kRank);

/// True when supp(rho) is contained in supp(sigma) up to rank_tol.
bool support_contained(const Matrix& rho, const Matrix& sigma,
                       double rank_tol = tol::kRank);

}  // namespace entmeter

#endif  // ENTMETER_DIVERGENCES_HPP
