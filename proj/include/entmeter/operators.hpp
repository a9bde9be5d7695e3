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

#ifndef ENTMETER_OPERATORS_HPP
#define ENTMETER_OPERATORS_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "entmeter/layout.hpp"

namespace entmeter {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kHermitian = 1e-12;  // construction check
inline constexpr double kPsd = 1e-9;         // membership / trace checks
inline constexpr double kRank = 1e-8;        // default eigen-rank cutoff
}  // namespace tol

/// Dense complex square matrix tagged with a SystemLayout.  Construction
/// checks Hermiticity to 1e-12 (relative to the largest entry).
class HermitianOperator {
 public:
  HermitianOperator(SystemLayout layout, Matrix entries);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  double trace() const { return mat_.trace().real(); }

  HermitianOperator with_b_side(std::vector<std::string> b_side) const {
    return HermitianOperator(layout_.with_b_side(std::move(b_side)), mat_);
  }

  static HermitianOperator identity(SystemLayout layout);
  static HermitianOperator zero(SystemLayout layout);

 private:
  SystemLayout layout_;
  Matrix mat_;
};

/// Positive semi-definite, unit-trace operator (checked on construction:
/// min eigenvalue >= -1e-9, |trace - 1| <= 1e-9).
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op);
  DensityOperator(SystemLayout layout, Matrix entries)
      : DensityOperator(HermitianOperator(std::move(layout), std::move(entries))) {}

  const HermitianOperator& op() const { return op_; }
  const SystemLayout& layout() const { return op_.layout(); }
  const Matrix& mat() const { return op_.mat(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

// ---------------------------------------------------------------------------
// Structural operations

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator partial_trace(const HermitianOperator& x,
                                std::span<const std::string> over);
HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::span<const std::string> on);
/// Partial transpose over the layout's b-side labels.
HermitianOperator partial_transpose_b(const HermitianOperator& x);
HermitianOperator permute_factors(const HermitianOperator& x,
                                  std::span<const std::string> order);
/// x tensored with identities, factors reordered to match `target`.
/// Every factor of x must appear in `target` with the same dimension.
HermitianOperator embed_tensor_identity(const HermitianOperator& x,
                                        const SystemLayout& target);

// Convenience overloads.
HermitianOperator partial_trace(const HermitianOperator& x,
                                std::initializer_list<std::string> over);
HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::initializer_list<std::string> on);

// Raw-matrix versions used by inner loops; dims is the factor-dimension
// vector, mask selects the factors acted on.
Matrix partial_trace_raw(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& traced);
Matrix partial_transpose_raw(const Matrix& m, const std::vector<int>& dims,
                             const std::vector<bool>& transposed);

// ---------------------------------------------------------------------------
// Spectral quantities

/// Sum of absolute eigenvalues (input must be Hermitian).
double trace_norm(const HermitianOperator& x);
double trace_norm(const Matrix& hermitian);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianOperator& x);
double operator_norm(const Matrix& hermitian);

double min_eigenvalue(const Matrix& hermitian);

/// Projector onto eigenspaces of rho with eigenvalue > rank_tol.
HermitianOperator support_projector(const DensityOperator& rho,
                                    double rank_tol = tol::kRank);
Matrix support_projector(const Matrix& psd, double rank_tol = tol::kRank);
int support_rank(const Matrix& psd, double rank_tol = tol::kRank);

// Hermitian matrix functions, computed by eigendecomposition.  Fractional
// and negative powers act on the support only (pseudo-inverse convention).
Matrix psd_power(const Matrix& psd, double exponent,
                 double rank_tol = tol::kRank);
/// log2 on the support; eigenvalues below rank_tol contribute nothing.
Matrix support_log2(const Matrix& psd, double rank_tol = tol::kRank);

/// (m + m^dagger)/2, for operations that preserve Hermiticity only up to
/// floating-point noise.
Matrix hermitize(const Matrix& m);

bool is_psd(const Matrix& hermitian, double tolerance = tol::kPsd);

// ---------------------------------------------------------------------------
// Canonical states

/// |Upsilon> = sum_i |i>|i>, squared norm d.
Vector unnormalized_max_ent(int d);
/// Maximally entangled state Phi_d on labels (la, lb), lb on the b side.
DensityOperator maximally_entangled(int d, const std::string& la = "A",
                                    const std::string& lb = "B");
/// Maximally mixed state on the given layout.
DensityOperator maximally_mixed(SystemLayout layout);

}  // namespace entmeter

#endif  // ENTMETER_OPERATORS_HPP
