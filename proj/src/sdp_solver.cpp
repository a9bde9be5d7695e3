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
// Homogeneous self-dual interior-point solver for real symmetric cone
// programs, following the classical primal-dual path-following scheme with
// Nesterov-Todd scaling and a Mehrotra predictor-corrector step.
//
// Equality constraints are eliminated up front by restricting to the
// affine feasible subspace (a nullspace basis of A), so the per-iteration
// KKT system reduces to a single positive definite Schur complement in the
// remaining coordinates.

#include "entmeter/sdp/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>

namespace entmeter::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Eigen::MatrixXd;
using Eigen::VectorXd;

using BlockVec = std::vector<MatrixXd>;

BlockVec zero_blocks(const std::vector<int>& dims) {
  BlockVec v;
  v.reserve(dims.size());
  for (int d : dims) v.push_back(MatrixXd::Zero(d, d));
  return v;
}

BlockVec identity_blocks(const std::vector<int>& dims) {
  BlockVec v;
  v.reserve(dims.size());
  for (int d : dims) v.push_back(MatrixXd::Identity(d, d));
  return v;
}

double bdot(const BlockVec& a, const BlockVec& b) {
  double acc = 0.0;
  for (size_t k = 0; k < a.size(); ++k)
    acc += (a[k].array() * b[k].array()).sum();
  return acc;
}

double bnorm(const BlockVec& a) { return std::sqrt(std::max(0.0, bdot(a, a))); }

double bmax(const BlockVec& a) {
  double m = 0.0;
  for (const auto& blk : a) m = std::max(m, blk.cwiseAbs().maxCoeff());
  return m;
}

void baxpy(double alpha, const BlockVec& x, BlockVec& y) {
  for (size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

MatrixXd symm(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Cone program with the equalities already eliminated:
//   minimize  c'xi + obj_off   over  s = h - G xi in the PSD product cone,
// where the original variable is x = x0 + N xi.
struct ReducedProgram {
  std::vector<int> dims;
  std::vector<MatrixXd> g;  // per block: svec_dim x nvar
  BlockVec h;
  VectorXd c;
  double obj_off = 0.0;
  int nvar = 0;

  // lift back to the original coordinates
  VectorXd x0;
  MatrixXd nmat;  // original_n x nvar
  bool eq_inconsistent = false;
};

// G xi as block matrices
BlockVec g_apply(const ReducedProgram& rp, const VectorXd& xi) {
  BlockVec out;
  out.reserve(rp.dims.size());
  for (size_t k = 0; k < rp.dims.size(); ++k)
    out.push_back(svec_to_mat(rp.g[k] * xi, rp.dims[k]));
  return out;
}

// G' z
VectorXd g_adjoint(const ReducedProgram& rp, const BlockVec& z) {
  VectorXd out = VectorXd::Zero(rp.nvar);
  for (size_t k = 0; k < rp.dims.size(); ++k)
    out.noalias() += rp.g[k].transpose() * svec(z[k]);
  return out;
}

ReducedProgram reduce_program(const RealConeProgram& prog) {
  ReducedProgram rp;
  rp.dims = prog.block_dims;
  rp.h = prog.hblocks;

  // dense per-block svec realization of G
  std::vector<MatrixXd> g0(prog.block_dims.size());
  for (size_t k = 0; k < prog.block_dims.size(); ++k)
    g0[k] = MatrixXd::Zero(svec_dim(prog.block_dims[k]), prog.nvar);
  const double sqrt2 = std::sqrt(2.0);
  for (int j = 0; j < prog.nvar; ++j) {
    for (const auto& bc : prog.gcols[j]) {
      const int d = prog.block_dims[bc.block];
      MatrixXd m = MatrixXd::Zero(d, d);
      for (const auto& e : bc.entries) m(e.r, e.c) += e.v;
      m = symm(m);
      // svec of m written directly into the column
      int pos = 0;
      for (int i = 0; i < d; ++i) g0[bc.block](pos++, j) += m(i, i);
      for (int i = 0; i < d; ++i)
        for (int jj = i + 1; jj < d; ++jj)
          g0[bc.block](pos++, j) += sqrt2 * m(i, jj);
    }
  }

  const int p = prog.eq_rows();
  if (p == 0) {
    rp.g = std::move(g0);
    rp.c = prog.c;
    rp.nvar = prog.nvar;
    rp.x0 = VectorXd::Zero(prog.nvar);
    rp.nmat = MatrixXd::Identity(prog.nvar, prog.nvar);
    return rp;
  }

  // x = x0 + N xi with A x0 = b and the columns of N spanning null(A)
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(prog.A);
  rp.x0 = cod.solve(prog.b);
  if ((prog.A * rp.x0 - prog.b).norm() >
      1e-9 * std::max(1.0, prog.b.norm())) {
    rp.eq_inconsistent = true;
    return rp;
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(prog.A.transpose());
  const int rank = static_cast<int>(qr.rank());
  MatrixXd q = qr.householderQ();
  rp.nmat = q.rightCols(prog.nvar - rank);
  rp.nvar = prog.nvar - rank;

  rp.c = rp.nmat.transpose() * prog.c;
  rp.obj_off = prog.c.dot(rp.x0);
  rp.g.resize(g0.size());
  for (size_t k = 0; k < g0.size(); ++k) {
    rp.h[k] -= svec_to_mat(g0[k] * rp.x0, rp.dims[k]);
    rp.g[k] = g0[k] * rp.nmat;
  }
  return rp;
}

struct Scaling {
  // s = R lambda R',  z = R^{-T} lambda R^{-1},  lambda diagonal
  std::vector<MatrixXd> r;    // R
  std::vector<MatrixXd> rti;  // R^{-T}
  std::vector<VectorXd> lambda;
  bool identity = false;
};

Scaling identity_scaling(const std::vector<int>& dims) {
  Scaling w;
  w.identity = true;
  for (int d : dims) {
    w.r.push_back(MatrixXd::Identity(d, d));
    w.rti.push_back(MatrixXd::Identity(d, d));
    w.lambda.push_back(VectorXd::Ones(d));
  }
  return w;
}

bool compute_scaling(const BlockVec& s, const BlockVec& z, Scaling& w) {
  w.identity = false;
  w.r.clear();
  w.rti.clear();
  w.lambda.clear();
  for (size_t k = 0; k < s.size(); ++k) {
    Eigen::LLT<MatrixXd> ls(s[k]);
    Eigen::LLT<MatrixXd> lz(z[k]);
    if (ls.info() != Eigen::Success || lz.info() != Eigen::Success)
      return false;
    MatrixXd Ls = ls.matrixL();
    MatrixXd Lz = lz.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(Lz.transpose() * Ls,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    VectorXd sig = svd.singularValues();
    if (sig.minCoeff() <= 0) return false;
    VectorXd isqrt = sig.cwiseSqrt().cwiseInverse();
    w.r.push_back(Ls * svd.matrixV() * isqrt.asDiagonal());
    w.rti.push_back(Lz * svd.matrixU() * isqrt.asDiagonal());
    w.lambda.push_back(sig);
  }
  return true;
}

// scale_s(U) = R^{-1} U R^{-T}; maps s-side points to the scaled space.
MatrixXd scale_s(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return w.rti[k].transpose() * u * w.rti[k];
}
// scale_z(U) = R' U R; maps z-side points to the scaled space.
MatrixXd scale_z(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return w.r[k].transpose() * u * w.r[k];
}
MatrixXd scale_s_inv(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return w.r[k] * u * w.r[k].transpose();
}
MatrixXd scale_z_inv(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return w.rti[k] * u * w.rti[k].transpose();
}
// W(U) = RR' U RR' and its inverse
MatrixXd w_apply(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return scale_s_inv(w, k, scale_z(w, k, u));
}
MatrixXd w_apply_inv(const Scaling& w, int k, const MatrixXd& u) {
  if (w.identity) return u;
  return scale_z_inv(w, k, scale_s(w, k, u));
}

// Solve lambda o X = D elementwise in the scaled space.
MatrixXd jordan_solve(const VectorXd& lambda, const MatrixXd& d) {
  MatrixXd x(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      x(i, j) = 2.0 * d(i, j) / (lambda(i) + lambda(j));
  return x;
}

// Blocking curvature for Lambda + t D >= 0: max(0, -eig_min(T)) with
// T = Lambda^{-1/2} D Lambda^{-1/2}.
double step_blocking(const VectorXd& lambda, const MatrixXd& d) {
  MatrixXd t(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      t(i, j) = d(i, j) / std::sqrt(lambda(i) * lambda(j));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symm(t), Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

// svec matrix of the congruence U -> M U M', built column by column from
// rank-one or rank-two basis images.
MatrixXd congruence_matrix(const MatrixXd& m) {
  const int d = static_cast<int>(m.rows());
  const int L = svec_dim(d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  MatrixXd t(L, L);
  int col = 0;
  MatrixXd f(d, d);
  for (int i = 0; i < d; ++i) {
    f.noalias() = m.col(i) * m.col(i).transpose();
    t.col(col++) = svec(f);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      f.noalias() = m.col(i) * m.col(j).transpose();
      f += f.transpose().eval();
      t.col(col++) = svec(MatrixXd(inv_sqrt2 * f));
    }
  return t;
}

struct KktFactorization {
  std::vector<MatrixXd> tb;    // scale_s in svec coordinates, per block
  std::vector<MatrixXd> ghat;  // tb * g, per block
  Eigen::LLT<MatrixXd> hllt;
  // accurate mode: LU of the full indefinite system [0 G'; G -W'W], used
  // once the Schur path runs out of precision near the boundary
  bool accurate = false;
  Eigen::PartialPivLU<MatrixXd> lu;
  std::vector<int> svec_off;
  int cone_total = 0;
  bool ok = false;
};

bool factor_kkt(const ReducedProgram& rp, const Scaling& w,
                KktFactorization& f, bool accurate) {
  const int n = rp.nvar;
  f.accurate = accurate;
  if (accurate) {
    f.svec_off.assign(rp.dims.size(), 0);
    int off = 0;
    for (size_t k = 0; k < rp.dims.size(); ++k) {
      f.svec_off[k] = off;
      off += svec_dim(rp.dims[k]);
    }
    f.cone_total = off;
    MatrixXd kkt = MatrixXd::Zero(n + off, n + off);
    for (size_t k = 0; k < rp.dims.size(); ++k) {
      const int L = svec_dim(rp.dims[k]);
      kkt.block(n + f.svec_off[k], 0, L, n) = rp.g[k];
      kkt.block(0, n + f.svec_off[k], n, L) = rp.g[k].transpose();
      MatrixXd wm = w.r[k] * w.r[k].transpose();
      kkt.block(n + f.svec_off[k], n + f.svec_off[k], L, L) =
          -congruence_matrix(wm);
    }
    f.lu.compute(kkt);
    f.ok = true;
    return true;
  }
  f.tb.resize(rp.dims.size());
  f.ghat.resize(rp.dims.size());
  MatrixXd hmat = MatrixXd::Zero(n, n);
  for (size_t k = 0; k < rp.dims.size(); ++k) {
    // scale_s(U) = Rti' U Rti, so the congruence factor is Rti'
    f.tb[k] = w.identity
                  ? MatrixXd(MatrixXd::Identity(rp.g[k].rows(), rp.g[k].rows()))
                  : congruence_matrix(w.rti[k].transpose());
    f.ghat[k].noalias() = f.tb[k] * rp.g[k];
    hmat.selfadjointView<Eigen::Lower>().rankUpdate(f.ghat[k].transpose());
  }
  hmat = hmat.selfadjointView<Eigen::Lower>();

  double reg = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    f.hllt.compute(hmat + reg * MatrixXd::Identity(n, n));
    if (f.hllt.info() == Eigen::Success) break;
    reg = (reg == 0.0) ? 1e-12 * std::max(1.0, hmat.trace() / n) : reg * 100.0;
  }
  if (f.hllt.info() != Eigen::Success) return false;
  f.ok = true;
  return true;
}

struct Kkt3Solution {
  VectorXd x;
  BlockVec z;
};

// Solve [0 G'; G -W'W] (x,z) = (bx,bz) through the Schur complement
// H = G' (W'W)^{-1} G.
void solve3_raw(const ReducedProgram& rp, const Scaling& w,
                const KktFactorization& f, const VectorXd& bx,
                const BlockVec& bz, Kkt3Solution& out) {
  const int n = rp.nvar;
  if (f.accurate) {
    VectorXd rhs(n + f.cone_total);
    rhs.head(n) = bx;
    for (size_t k = 0; k < rp.dims.size(); ++k)
      rhs.segment(n + f.svec_off[k], svec_dim(rp.dims[k])) = svec(bz[k]);
    VectorXd sol = f.lu.solve(rhs);
    out.x = sol.head(n);
    out.z.clear();
    for (size_t k = 0; k < rp.dims.size(); ++k)
      out.z.push_back(symm(svec_to_mat(
          sol.segment(n + f.svec_off[k], svec_dim(rp.dims[k])), rp.dims[k])));
    return;
  }
  VectorXd rhs = bx;
  for (size_t k = 0; k < rp.dims.size(); ++k)
    rhs.noalias() += f.ghat[k].transpose() * (f.tb[k] * svec(bz[k]));
  out.x = f.hllt.solve(rhs);
  out.z = zero_blocks(rp.dims);
  for (size_t k = 0; k < rp.dims.size(); ++k) {
    MatrixXd gx = svec_to_mat(rp.g[k] * out.x, rp.dims[k]);
    out.z[k] = symm(w_apply_inv(w, static_cast<int>(k), MatrixXd(gx - bz[k])));
  }
}

void solve3(const ReducedProgram& rp, const Scaling& w,
            const KktFactorization& f, const VectorXd& bx, const BlockVec& bz,
            Kkt3Solution& out, int refinement) {
  solve3_raw(rp, w, f, bx, bz, out);
  for (int round = 0; round < refinement; ++round) {
    VectorXd res_x = bx - g_adjoint(rp, out.z);
    BlockVec res_z = bz;
    for (size_t k = 0; k < rp.dims.size(); ++k) {
      MatrixXd gx = svec_to_mat(rp.g[k] * out.x, rp.dims[k]);
      res_z[k] -= gx - w_apply(w, static_cast<int>(k), out.z[k]);
    }
    Kkt3Solution corr;
    solve3_raw(rp, w, f, res_x, res_z, corr);
    out.x += corr.x;
    baxpy(1.0, corr.z, out.z);
  }
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

ConeSolution solve_cone_program(const RealConeProgram& prog,
                                const SolverOptions& opts) {
  ConeSolution sol;
  if (opts.gap_tol <= 0 || opts.feas_tol <= 0 || opts.max_iter <= 0)
    throw std::invalid_argument("solver: tolerances and max_iter must be > 0");
  if (prog.nvar == 0 || prog.block_dims.empty())
    throw std::invalid_argument("solver: empty program");

  ReducedProgram rp = reduce_program(prog);
  if (rp.eq_inconsistent) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  const auto& dims = rp.dims;
  const int n = rp.nvar;

  const BlockVec e = identity_blocks(dims);
  double deg = 1.0;
  for (int d : dims) deg += d;

  // residuals are judged entrywise relative to the data magnitude
  const double resx0 =
      std::max(1.0, rp.c.size() ? rp.c.cwiseAbs().maxCoeff() : 0.0);
  const double resz0 = std::max(1.0, bmax(rp.h));

  VectorXd x = VectorXd::Zero(n);
  BlockVec s = identity_blocks(dims);
  BlockVec z = identity_blocks(dims);
  double tau = 1.0, kappa = 1.0;
  bool accurate = false;
  int stall = 0;

  // least-squares start, shifted into the cone
  Scaling w = identity_scaling(dims);
  KktFactorization fact;
  if (factor_kkt(rp, w, fact, false)) {
    Kkt3Solution init;
    solve3(rp, w, fact, VectorXd::Zero(n), rp.h, init, opts.refinement);
    x = init.x;
    BlockVec scand = g_apply(rp, x);
    for (size_t k = 0; k < scand.size(); ++k)
      scand[k] = symm(MatrixXd(rp.h[k] - scand[k]));
    double smin = kInf;
    for (const auto& m : scand) {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
      smin = std::min(smin, es.eigenvalues().minCoeff());
    }
    s = scand;
    if (smin < 1e-6) baxpy(1.0 - smin, e, s);

    Kkt3Solution dinit;
    solve3(rp, w, fact, -rp.c, zero_blocks(dims), dinit, opts.refinement);
    double zmin = kInf;
    for (auto& m : dinit.z) {
      m = symm(m);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
      zmin = std::min(zmin, es.eigenvalues().minCoeff());
    }
    z = dinit.z;
    if (zmin < 1e-6) baxpy(1.0 - zmin, e, z);
  }

  const double mu0 = (bdot(s, z) + tau * kappa) / deg;

  VectorXd rx;
  BlockVec rz = zero_blocks(dims);
  double rtau = 0.0;
  auto compute_residuals = [&]() {
    rx = g_adjoint(rp, z) + rp.c * tau;
    rz = s;
    baxpy(1.0, g_apply(rp, x), rz);
    baxpy(-tau, rp.h, rz);
    rtau = kappa + rp.c.dot(x) + bdot(rp.h, z);
  };

  auto finalize_optimal = [&]() {
    sol.status = SolveStatus::Optimal;
    VectorXd xi = x / tau;
    sol.x = rp.x0 + rp.nmat * xi;
    sol.s = s;
    sol.z = z;
    for (auto& m : sol.s) m /= tau;
    for (auto& m : sol.z) m /= tau;
    sol.primal_obj = rp.c.dot(xi) + rp.obj_off;
    sol.dual_obj = -bdot(rp.h, sol.z) + rp.obj_off;
    sol.gap = std::abs(sol.primal_obj - sol.dual_obj);
    sol.rel_gap = sol.gap / std::max(1.0, std::abs(sol.primal_obj));
  };

  struct Snapshot {
    VectorXd x;
    BlockVec s, z;
    double tau = 1.0, kappa = 1.0;
    double metric = kInf;
  } best;

  auto metrics = [&](double& pres, double& dres, double& abs_gap,
                     double& pcost, double& dcost) {
    pcost = rp.c.dot(x) / tau + rp.obj_off;
    dcost = -bdot(rp.h, z) / tau + rp.obj_off;
    pres = bmax(rz) / resz0 / tau;
    dres = rx.cwiseAbs().maxCoeff() / resx0 / tau;
    abs_gap = bdot(s, z) / (tau * tau);
  };

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    sol.iterations = iter;
    compute_residuals();

    const double gap = bdot(s, z);
    const double mu = (gap + tau * kappa) / deg;
    double pres, dres, abs_gap, pcost, dcost;
    metrics(pres, dres, abs_gap, pcost, dcost);
    const double scale = std::max(1.0, std::abs(pcost));

    if (opts.verbose) {
      std::cerr << "iter " << iter << " pcost " << pcost << " dcost " << dcost
                << " pres " << pres << " dres " << dres << " gap " << abs_gap
                << " tau " << tau << " kappa " << kappa << "\n";
    }

    if (pres <= opts.feas_tol && dres <= opts.feas_tol &&
        (abs_gap <= opts.gap_tol * scale ||
         std::abs(pcost - dcost) <= opts.gap_tol * scale)) {
      finalize_optimal();
      return sol;
    }

    const double metric = std::max(
        {pres, dres, std::min(abs_gap, std::abs(pcost - dcost)) / scale});
    if (metric < best.metric) {
      if (metric < 0.9 * best.metric) stall = 0;
      best = {x, s, z, tau, kappa, metric};
    } else if (best.metric < 1e-3) {
      // plateaus only matter once the endgame has been reached
      ++stall;
      if (!accurate && stall >= 2) {
        // restart from the best iterate with the full indefinite KKT
        // factorization, which does not square the scaling
        accurate = true;
        stall = 0;
        x = best.x;
        s = best.s;
        z = best.z;
        tau = best.tau;
        kappa = best.kappa;
        compute_residuals();
      } else if (stall >= 20 ||
                 (metric > 1e6 * best.metric && best.metric < 1.0)) {
        break;  // no further progress to be had at this arithmetic
      }
    }

    // infeasibility certificates
    const double hz = -bdot(rp.h, z);
    if (hz > 0) {
      if (g_adjoint(rp, z).cwiseAbs().maxCoeff() / resx0 <=
          opts.feas_tol * hz) {
        sol.status = SolveStatus::Infeasible;
        return sol;
      }
    }
    const double neg_cx = -rp.c.dot(x);
    if (neg_cx > 0) {
      BlockVec gxs = s;
      baxpy(1.0, g_apply(rp, x), gxs);
      if (bmax(gxs) / resz0 <= opts.feas_tol * neg_cx) {
        sol.status = SolveStatus::Unbounded;
        return sol;
      }
    }

    if (mu < 1e-14 * mu0) break;  // wedged near the boundary

    if (!compute_scaling(s, z, w)) break;
    Kkt3Solution p1;
    double denom_p1 = 0.0;
    auto refactor = [&]() -> bool {
      if (!factor_kkt(rp, w, fact, accurate)) return false;
      solve3(rp, w, fact, -rp.c, rp.h, p1, opts.refinement);
      denom_p1 = rp.c.dot(p1.x) + bdot(rp.h, p1.z) - kappa / tau;
      return true;
    };
    if (!refactor()) break;

    auto direction = [&](double eta, const BlockVec& jordan_rhs, double kt_rhs,
                         Kkt3Solution& d3, BlockVec& ds, double& dtau,
                         double& dkappa) -> bool {
      BlockVec ds0(dims.size());
      for (size_t k = 0; k < dims.size(); ++k) {
        MatrixXd t = jordan_solve(w.lambda[k], jordan_rhs[k]);
        ds0[k] = symm(scale_s_inv(w, static_cast<int>(k), t));
      }
      BlockVec bz = ds0;
      for (size_t k = 0; k < bz.size(); ++k)
        bz[k] = MatrixXd(-eta * rz[k] - ds0[k]);
      solve3(rp, w, fact, -eta * rx, bz, d3, opts.refinement);
      const double num =
          -eta * rtau - kt_rhs / tau - (rp.c.dot(d3.x) + bdot(rp.h, d3.z));
      if (denom_p1 == 0.0) return false;
      dtau = num / denom_p1;
      d3.x += dtau * p1.x;
      baxpy(dtau, p1.z, d3.z);
      ds = ds0;
      for (size_t k = 0; k < ds.size(); ++k)
        ds[k] -= w_apply(w, static_cast<int>(k), d3.z[k]);
      for (auto& m : ds) m = symm(m);
      for (auto& m : d3.z) m = symm(m);
      dkappa = (kt_rhs - kappa * dtau) / tau;
      return true;
    };

    auto max_step = [&](const BlockVec& ds, const BlockVec& dz, double dtau,
                        double dkappa) {
      double bound = 0.0;
      for (size_t k = 0; k < dims.size(); ++k) {
        bound = std::max(bound,
                         step_blocking(w.lambda[k],
                                       scale_s(w, static_cast<int>(k), ds[k])));
        bound = std::max(bound,
                         step_blocking(w.lambda[k],
                                       scale_z(w, static_cast<int>(k), dz[k])));
      }
      if (dtau < 0) bound = std::max(bound, -dtau / tau);
      if (dkappa < 0) bound = std::max(bound, -dkappa / kappa);
      return bound;
    };

    // predictor
    BlockVec jrhs(dims.size());
    for (size_t k = 0; k < dims.size(); ++k) {
      VectorXd neg = -w.lambda[k].cwiseProduct(w.lambda[k]);
      jrhs[k] = MatrixXd(neg.asDiagonal());
    }
    Kkt3Solution da;
    BlockVec dsa;
    double dtaua = 0.0, dkappaa = 0.0;
    if (!direction(1.0, jrhs, -tau * kappa, da, dsa, dtaua, dkappaa)) break;

    const double bound_a = max_step(dsa, da.z, dtaua, dkappaa);
    const double alpha_a = bound_a <= 0 ? 1.0 : std::min(1.0, 1.0 / bound_a);

    double gap_a = (tau + alpha_a * dtaua) * (kappa + alpha_a * dkappaa);
    for (size_t k = 0; k < dims.size(); ++k) {
      MatrixXd ls = scale_s(w, static_cast<int>(k), dsa[k]);
      MatrixXd lz = scale_z(w, static_cast<int>(k), da.z[k]);
      MatrixXd sa = MatrixXd(w.lambda[k].asDiagonal()) + alpha_a * ls;
      MatrixXd za = MatrixXd(w.lambda[k].asDiagonal()) + alpha_a * lz;
      gap_a += (sa.array() * za.array()).sum();
    }
    const double rho = gap_a / (gap + tau * kappa);
    const double sigma = std::pow(std::clamp(rho, 0.0, 1.0), 3.0);

    // corrector / combined direction
    for (size_t k = 0; k < dims.size(); ++k) {
      MatrixXd ls = scale_s(w, static_cast<int>(k), dsa[k]);
      MatrixXd lz = scale_z(w, static_cast<int>(k), da.z[k]);
      MatrixXd corr = 0.5 * (ls * lz + lz * ls);
      VectorXd diag =
          (-w.lambda[k].cwiseProduct(w.lambda[k]).array() + sigma * mu)
              .matrix();
      jrhs[k] = MatrixXd(diag.asDiagonal());
      jrhs[k] -= corr;
    }
    // A direction is usable only if its Newton-equation residual is well
    // below what the step is meant to fix; near degenerate faces the
    // second-order correction term can overwhelm double precision.
    auto direction_ok = [&](const Kkt3Solution& d3, const BlockVec& ds,
                            double dtau, double eta) {
      VectorXd n1 = g_adjoint(rp, d3.z) + rp.c * dtau + eta * rx;
      BlockVec n3 = g_apply(rp, d3.x);
      baxpy(1.0, ds, n3);
      baxpy(-dtau, rp.h, n3);
      baxpy(eta, rz, n3);
      const double q1 = n1.cwiseAbs().maxCoeff() / resx0 / tau;
      const double q3 = bmax(n3) / resz0 / tau;
      return q1 <= 0.1 * std::max(dres, opts.feas_tol) &&
             q3 <= 0.1 * std::max(pres, opts.feas_tol);
    };

    Kkt3Solution dc;
    BlockVec dsc;
    double dtauc = 0.0, dkappac = 0.0;
    bool have_dir = false;
    for (int attempt = 0; attempt < 3 && !have_dir; ++attempt) {
      if (attempt == 1) {
        // drop the second-order term: plain centering step
        const double sig = std::max(sigma, 0.5);
        for (size_t k = 0; k < dims.size(); ++k) {
          VectorXd diag =
              (-w.lambda[k].cwiseProduct(w.lambda[k]).array() + sig * mu)
                  .matrix();
          jrhs[k] = MatrixXd(diag.asDiagonal());
        }
        if (!direction(1.0 - sig, jrhs, -tau * kappa + sig * mu, dc, dsc,
                       dtauc, dkappac))
          break;
        have_dir = direction_ok(dc, dsc, dtauc, 1.0 - sig);
        continue;
      }
      if (attempt == 2) {
        if (accurate) break;
        accurate = true;  // redo the centering step on the full system
        if (!refactor()) break;
        const double sig = std::max(sigma, 0.5);
        for (size_t k = 0; k < dims.size(); ++k) {
          VectorXd diag =
              (-w.lambda[k].cwiseProduct(w.lambda[k]).array() + sig * mu)
                  .matrix();
          jrhs[k] = MatrixXd(diag.asDiagonal());
        }
        if (!direction(1.0 - sig, jrhs, -tau * kappa + sig * mu, dc, dsc,
                       dtauc, dkappac))
          break;
        have_dir = direction_ok(dc, dsc, dtauc, 1.0 - sig);
        continue;
      }
      if (!direction(1.0 - sigma, jrhs,
                     -tau * kappa - dtaua * dkappaa + sigma * mu, dc, dsc,
                     dtauc, dkappac))
        break;
      have_dir = direction_ok(dc, dsc, dtauc, 1.0 - sigma);
    }
    if (!have_dir) {
      ++stall;
      if (stall >= 20) break;
      continue;  // keep the iterate; the plateau logic decides what is next
    }

    const double bound_c = max_step(dsc, dc.z, dtauc, dkappac);
    const double alpha = bound_c <= 0 ? 1.0 : std::min(1.0, 0.99 / bound_c);

    x += alpha * dc.x;
    baxpy(alpha, dsc, s);
    baxpy(alpha, dc.z, z);
    for (auto& m : s) m = symm(m);
    for (auto& m : z) m = symm(m);
    tau += alpha * dtauc;
    kappa += alpha * dkappac;

    if (tau <= 0 || kappa < 0) break;
  }

  // Re-test the stopping conditions on the best iterate seen.
  if (best.metric < kInf) {
    x = best.x;
    s = best.s;
    z = best.z;
    tau = best.tau;
    kappa = best.kappa;
  }
  compute_residuals();
  {
    double pres, dres, abs_gap, pcost, dcost;
    metrics(pres, dres, abs_gap, pcost, dcost);
    const double scale = std::max(1.0, std::abs(pcost));
    if (pres <= opts.feas_tol && dres <= opts.feas_tol &&
        (abs_gap <= opts.gap_tol * scale ||
         std::abs(pcost - dcost) <= opts.gap_tol * scale)) {
      finalize_optimal();
      return sol;
    }
  }

  // Classify by the strongest certificate available.
  const double hz = -bdot(rp.h, z);
  if (hz > 0 && g_adjoint(rp, z).cwiseAbs().maxCoeff() / resx0 <=
                    std::sqrt(opts.feas_tol) * hz) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  const double neg_cx = -rp.c.dot(x);
  if (neg_cx > 0) {
    BlockVec gxs = s;
    baxpy(1.0, g_apply(rp, x), gxs);
    if (bmax(gxs) / resz0 <= std::sqrt(opts.feas_tol) * neg_cx) {
      sol.status = SolveStatus::Unbounded;
      return sol;
    }
  }
  sol.status = SolveStatus::NumericalFailure;
  return sol;
}

SdpSolution solve(const SdpProblem& p, const SolverOptions& opts) {
  RealConeProgram prog = embed_real(p);
  ConeSolution cs = solve_cone_program(prog, opts);

  SdpSolution out;
  out.status = cs.status;
  out.iterations = cs.iterations;
  out.equality_realization =
      prog.eq_rows() > 0 ? "nullspace-elimination" : "none";
  if (cs.status != SolveStatus::Optimal) return out;

  const double sgn = (prog.sense == Sense::Maximize) ? -1.0 : 1.0;
  out.primal_value = sgn * cs.primal_obj + prog.c0;
  out.dual_value = sgn * cs.dual_obj + prog.c0;
  out.gap = std::abs(out.primal_value - out.dual_value);
  out.rel_gap = out.gap / std::max(1.0, std::abs(out.primal_value));
  for (const auto& slot : prog.slots) {
    Matrix m = hvec_to_mat(cs.x.segment(slot.offset, slot.coords),
                           slot.layout.total_dim());
    out.variable_values.emplace(slot.name,
                                HermitianOperator(slot.layout, hermitize(m)));
  }
  return out;
}

SdpSolution solve(const SdpProblem& p, double gap_tol, double feas_tol,
                  int max_iter) {
  SolverOptions opts;
  opts.gap_tol = gap_tol;
  opts.feas_tol = feas_tol;
  opts.max_iter = max_iter;
  return solve(p, opts);
}

}  // namespace entmeter::sdp
