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

#include "entmeter/operators.hpp"

#include <algorithm>
#include <cmath>

namespace entmeter {

namespace {

std::vector<bool> label_mask(const SystemLayout& layout,
                             std::span<const std::string> labels) {
  std::vector<bool> mask(layout.factor_count(), false);
  for (const auto& l : labels) mask[layout.index_of(l)] = true;
  return mask;
}

}  // namespace

HermitianOperator::HermitianOperator(SystemLayout layout, Matrix entries)
    : layout_(std::move(layout)), mat_(std::move(entries)) {
  const int d = layout_.total_dim();
  if (mat_.rows() != d || mat_.cols() != d)
    throw std::invalid_argument("operator: matrix is " +
                                std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()) +
                                " but layout dimension is " + std::to_string(d));
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::kHermitian * scale)
    throw std::invalid_argument("operator: not Hermitian (deviation " +
                                std::to_string(dev) + ")");
}

HermitianOperator HermitianOperator::identity(SystemLayout layout) {
  const int d = layout.total_dim();
  return HermitianOperator(std::move(layout), Matrix::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(SystemLayout layout) {
  const int d = layout.total_dim();
  return HermitianOperator(std::move(layout), Matrix::Zero(d, d));
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > tol::kPsd)
    throw std::invalid_argument("density operator: trace is " +
                                std::to_string(op_.trace()));
  const double lam = min_eigenvalue(op_.mat());
  if (lam < -tol::kPsd)
    throw std::invalid_argument(
        "density operator: not positive semi-definite (min eigenvalue " +
        std::to_string(lam) + ")");
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  SystemLayout layout = a.layout().concatenated(b.layout());
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
  return HermitianOperator(std::move(layout), std::move(out));
}

Matrix partial_trace_raw(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<bool>& traced) {
  std::vector<int> kept_dims, tr_dims;
  for (size_t k = 0; k < dims.size(); ++k)
    (traced[k] ? tr_dims : kept_dims).push_back(dims[k]);
  MultiIndex full(dims), kept(kept_dims), tr(tr_dims);

  // full index = kept contribution + traced contribution, precomputed
  std::vector<int> kc(kept.total()), tc(tr.total());
  {
    std::vector<int> digits(dims.size(), 0);
    for (int f = 0; f < kept.total(); ++f) {
      std::vector<int> kd(kept_dims.size());
      kept.unflatten(f, kd);
      int pos = 0, acc = 0;
      for (size_t k = 0; k < dims.size(); ++k)
        if (!traced[k]) acc += kd[pos++] * full.stride(static_cast<int>(k));
      kc[f] = acc;
    }
    for (int f = 0; f < tr.total(); ++f) {
      std::vector<int> td(tr_dims.size());
      tr.unflatten(f, td);
      int pos = 0, acc = 0;
      for (size_t k = 0; k < dims.size(); ++k)
        if (traced[k]) acc += td[pos++] * full.stride(static_cast<int>(k));
      tc[f] = acc;
    }
  }

  Matrix out = Matrix::Zero(kept.total(), kept.total());
  for (int i = 0; i < kept.total(); ++i)
    for (int j = 0; j < kept.total(); ++j) {
      Complex acc = 0;
      for (int t = 0; t < tr.total(); ++t) acc += m(kc[i] + tc[t], kc[j] + tc[t]);
      out(i, j) = acc;
    }
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& x,
                                std::span<const std::string> over) {
  auto mask = label_mask(x.layout(), over);
  Matrix out = partial_trace_raw(x.mat(), x.layout().dims(), mask);
  return HermitianOperator(x.layout().without(over), std::move(out));
}

Matrix partial_transpose_raw(const Matrix& m, const std::vector<int>& dims,
                             const std::vector<bool>& transposed) {
  MultiIndex full(dims);
  const int n = full.total();
  Matrix out(n, n);
  std::vector<int> ri(dims.size()), ci(dims.size());
  for (int r = 0; r < n; ++r) {
    full.unflatten(r, ri);
    for (int c = 0; c < n; ++c) {
      full.unflatten(c, ci);
      int rr = 0, cc = 0;
      for (size_t k = 0; k < dims.size(); ++k) {
        const int sk = full.stride(static_cast<int>(k));
        if (transposed[k]) {
          rr += ci[k] * sk;
          cc += ri[k] * sk;
        } else {
          rr += ri[k] * sk;
          cc += ci[k] * sk;
        }
      }
      out(rr, cc) = m(r, c);
    }
  }
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::span<const std::string> on) {
  auto mask = label_mask(x.layout(), on);
  Matrix out = partial_transpose_raw(x.mat(), x.layout().dims(), mask);
  return HermitianOperator(x.layout(), std::move(out));
}

HermitianOperator partial_transpose_b(const HermitianOperator& x) {
  return partial_transpose(x, std::span<const std::string>(x.layout().b_side()));
}

HermitianOperator partial_trace(const HermitianOperator& x,
                                std::initializer_list<std::string> over) {
  std::vector<std::string> v(over);
  return partial_trace(x, std::span<const std::string>(v));
}

HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::initializer_list<std::string> on) {
  std::vector<std::string> v(on);
  return partial_transpose(x, std::span<const std::string>(v));
}

HermitianOperator permute_factors(const HermitianOperator& x,
                                  std::span<const std::string> order) {
  SystemLayout target = x.layout().permuted(order);
  MultiIndex src(x.layout().dims()), dst(target.dims());
  std::vector<int> map(x.layout().factor_count());
  for (int k = 0; k < target.factor_count(); ++k)
    map[k] = x.layout().index_of(target.factor(k).label);

  const int n = src.total();
  // dst digit k = src digit map[k]
  std::vector<int> perm(n);
  std::vector<int> digits(map.size());
  for (int f = 0; f < n; ++f) {
    src.unflatten(f, digits);
    int acc = 0;
    for (size_t k = 0; k < map.size(); ++k)
      acc += digits[map[k]] * dst.stride(static_cast<int>(k));
    perm[f] = acc;
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(perm[i], perm[j]) = x.mat()(i, j);
  return HermitianOperator(std::move(target), std::move(out));
}

HermitianOperator embed_tensor_identity(const HermitianOperator& x,
                                        const SystemLayout& target) {
  std::vector<std::string> extra;
  for (const auto& f : target.factors()) {
    if (x.layout().has_label(f.label)) {
      if (x.layout().dim_of(f.label) != f.dim)
        throw std::invalid_argument("embed: dimension mismatch on '" + f.label +
                                    "'");
    } else {
      extra.push_back(f.label);
    }
  }
  for (const auto& f : x.layout().factors())
    if (!target.has_label(f.label))
      throw std::invalid_argument("embed: target lacks factor '" + f.label +
                                  "'");

  HermitianOperator cur = x;
  for (const auto& l : extra) {
    cur = tensor(cur, HermitianOperator::identity(
                          SystemLayout::single(l, target.dim_of(l))));
  }
  std::vector<std::string> order;
  for (const auto& f : target.factors()) order.push_back(f.label);
  HermitianOperator perm = permute_factors(cur, order);
  return HermitianOperator(target, perm.mat());
}

double trace_norm(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const HermitianOperator& x) { return trace_norm(x.mat()); }

double operator_norm(const Matrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const HermitianOperator& x) {
  return operator_norm(x.mat());
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix support_projector(const Matrix& psd, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
  Matrix out = Matrix::Zero(psd.rows(), psd.cols());
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) > rank_tol)
      out += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  }
  return hermitize(out);
}

HermitianOperator support_projector(const DensityOperator& rho,
                                    double rank_tol) {
  if (rank_tol <= 0)
    throw std::invalid_argument("support_projector: rank_tol must be > 0");
  return HermitianOperator(rho.layout(), support_projector(rho.mat(), rank_tol));
}

int support_rank(const Matrix& psd, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(psd, Eigen::EigenvaluesOnly);
  int r = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > rank_tol) ++r;
  return r;
}

Matrix psd_power(const Matrix& psd, double exponent, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
  Matrix out = Matrix::Zero(psd.rows(), psd.cols());
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    double v;
    if (lam > rank_tol) {
      v = std::pow(lam, exponent);
    } else if (exponent > 0 && lam > 0) {
      v = std::pow(lam, exponent);  // harmless tail for positive powers
    } else {
      continue;  // off-support
    }
    out += v * es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  }
  return hermitize(out);
}

Matrix support_log2(const Matrix& psd, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(psd);
  Matrix out = Matrix::Zero(psd.rows(), psd.cols());
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= rank_tol) continue;
    out += std::log2(lam) * es.eigenvectors().col(k) *
           es.eigenvectors().col(k).adjoint();
  }
  return hermitize(out);
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_psd(const Matrix& hermitian, double tolerance) {
  return min_eigenvalue(hermitian) >= -tolerance;
}

Vector unnormalized_max_ent(int d) {
  if (d < 1) throw std::invalid_argument("unnormalized_max_ent: d must be >= 1");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

DensityOperator maximally_entangled(int d, const std::string& la,
                                    const std::string& lb) {
  Vector ups = unnormalized_max_ent(d);
  Matrix m = (ups * ups.adjoint()) / static_cast<double>(d);
  SystemLayout layout({{la, d}, {lb, d}}, {lb});
  return DensityOperator(HermitianOperator(std::move(layout), std::move(m)));
}

DensityOperator maximally_mixed(SystemLayout layout) {
  const int d = layout.total_dim();
  return DensityOperator(HermitianOperator(
      std::move(layout), Matrix::Identity(d, d) / static_cast<double>(d)));
}

}  // namespace entmeter
