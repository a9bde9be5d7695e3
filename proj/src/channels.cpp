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

#include "entmeter/channels.hpp"

#include <array>
#include <cmath>

namespace entmeter {

namespace {

// out[(l,a,b,m),(l',a',b',m')] =
//   sum_{p q p' q'} x[(l,p,q,m),(l',p',q',m')] * J[(p,a,b,q),(p',a',b',q')]
//
// This is the post-selected teleportation contraction; with x a Choi
// operator it also realizes serial composition.
Matrix contract_choi(const Matrix& choi, const ChannelDims& cd, const Matrix& x,
                     int dl, int dm) {
  const int pa = cd.in_a, pb = cd.in_b, oa = cd.out_a, ob = cd.out_b;
  MultiIndex xin({dl, pa, pb, dm});
  MultiIndex xout({dl, oa, ob, dm});
  MultiIndex jin({pa, oa, ob, pb});
  Matrix out = Matrix::Zero(xout.total(), xout.total());
  for (int l = 0; l < dl; ++l)
    for (int m = 0; m < dm; ++m)
      for (int lp = 0; lp < dl; ++lp)
        for (int mp = 0; mp < dm; ++mp)
          for (int a = 0; a < oa; ++a)
            for (int b = 0; b < ob; ++b)
              for (int ap = 0; ap < oa; ++ap)
                for (int bp = 0; bp < ob; ++bp) {
                  Complex acc = 0;
                  for (int p = 0; p < pa; ++p)
                    for (int q = 0; q < pb; ++q)
                      for (int pp = 0; pp < pa; ++pp)
                        for (int qp = 0; qp < pb; ++qp) {
                          const int xr =
                              xin.flatten(std::array{l, p, q, m});
                          const int xc =
                              xin.flatten(std::array{lp, pp, qp, mp});
                          const int jr = jin.flatten(std::array{p, a, b, q});
                          const int jc =
                              jin.flatten(std::array{pp, ap, bp, qp});
                          acc += x(xr, xc) * choi(jr, jc);
                        }
                  out(xout.flatten(std::array{l, a, b, m}),
                      xout.flatten(std::array{lp, ap, bp, mp})) = acc;
                }
  return out;
}

Matrix build_choi_matrix(const ApplyFn& fn, const ChannelDims& d) {
  const int din = d.in_a * d.in_b;
  const int dout = d.out_a * d.out_b;
  MultiIndex jin({d.in_a, d.out_a, d.out_b, d.in_b});
  MultiIndex inidx({d.in_a, d.in_b});
  MultiIndex outidx({d.out_a, d.out_b});
  Matrix j = Matrix::Zero(din * dout, din * dout);
  Matrix basis = Matrix::Zero(din, din);
  for (int r = 0; r < din; ++r)
    for (int c = 0; c < din; ++c) {
      basis.setZero();
      basis(r, c) = 1.0;
      Matrix img = fn(basis);
      if (img.rows() != dout || img.cols() != dout)
        throw std::invalid_argument("choi_of: output dimension mismatch");
      const int sa = inidx.digit(r, 0), sb = inidx.digit(r, 1);
      const int sap = inidx.digit(c, 0), sbp = inidx.digit(c, 1);
      for (int o = 0; o < dout; ++o)
        for (int op = 0; op < dout; ++op) {
          const int a = outidx.digit(o, 0), b = outidx.digit(o, 1);
          const int ap = outidx.digit(op, 0), bp = outidx.digit(op, 1);
          j(jin.flatten(std::array{sa, a, b, sb}),
            jin.flatten(std::array{sap, ap, bp, sbp})) = img(o, op);
        }
    }
  return j;
}

void check_linearity(const ApplyFn& fn, const ChannelDims& d) {
  const int din = d.in_a * d.in_b;
  std::mt19937_64 rng(0x11d);
  std::normal_distribution<double> g;
  Matrix x(din, din), y(din, din);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      x(i, j) = Complex(g(rng), g(rng));
      y(i, j) = Complex(g(rng), g(rng));
    }
  const double al = 0.37, be = -1.21;
  Matrix lhs = fn(al * x + be * y);
  Matrix rhs = al * fn(x) + be * fn(y);
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("choi_of: map is not linear");
}

}  // namespace

SystemLayout CPMap::choi_layout(const ChannelDims& d) {
  return SystemLayout({{kLabelSA, d.in_a},
                       {kLabelA, d.out_a},
                       {kLabelB, d.out_b},
                       {kLabelSB, d.in_b}},
                      {kLabelB, kLabelSB});
}

CPMap::CPMap(HermitianOperator choi, ChannelDims dims, double psd_tol)
    : choi_(std::move(choi)), dims_(dims) {
  if (!choi_.layout().same_factors(choi_layout(dims)))
    throw std::invalid_argument("channel: Choi layout must be (SA,A,B,SB)");
  const double lam = min_eigenvalue(choi_.mat());
  if (lam < -psd_tol)
    throw std::invalid_argument("channel: Choi not PSD (min eigenvalue " +
                                std::to_string(lam) + ")");
}

BipartiteChannel::BipartiteChannel(HermitianOperator choi, ChannelDims dims,
                                   double psd_tol, double tp_tol)
    : CPMap(std::move(choi), dims, psd_tol) {
  HermitianOperator marg = partial_trace(choi_, {kLabelA, kLabelB});
  const int d = dims_.in_a * dims_.in_b;
  const double dev =
      (marg.mat() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tp_tol)
    throw std::invalid_argument(
        "channel: Choi is not trace preserving (deviation " +
        std::to_string(dev) + ")");
}

BipartiteChannel BipartiteChannel::identity(int da, int db) {
  return choi_of([](const Matrix& x) { return x; }, {da, db, da, db});
}

CPMap choi_of_cp(const ApplyFn& fn, const ChannelDims& d) {
  check_linearity(fn, d);
  Matrix j = build_choi_matrix(fn, d);
  return CPMap(HermitianOperator(CPMap::choi_layout(d), hermitize(j)), d);
}

BipartiteChannel choi_of(const ApplyFn& fn, const ChannelDims& d) {
  check_linearity(fn, d);
  Matrix j = build_choi_matrix(fn, d);
  return BipartiteChannel(
      HermitianOperator(CPMap::choi_layout(d), hermitize(j)), d);
}

HermitianOperator apply_to_operator(const CPMap& n, const HermitianOperator& x) {
  const SystemLayout& in = x.layout();
  std::vector<Factor> fs = in.factors();
  int dl = 1, dm = 1, pa_pos = 0;
  if (fs.size() == 2) {
    pa_pos = 0;
  } else if (fs.size() == 4) {
    dl = fs[0].dim;
    dm = fs[3].dim;
    pa_pos = 1;
  } else {
    throw std::invalid_argument("apply: state must have 2 or 4 factors");
  }
  if (fs[pa_pos].dim != n.dims().in_a || fs[pa_pos + 1].dim != n.dims().in_b)
    throw std::invalid_argument("apply: input dimensions do not match channel");

  Matrix out = contract_choi(n.choi().mat(), n.dims(), x.mat(), dl, dm);

  std::vector<Factor> ofs = fs;
  ofs[pa_pos].dim = n.dims().out_a;
  ofs[pa_pos + 1].dim = n.dims().out_b;
  SystemLayout olay(ofs, in.b_side());
  return HermitianOperator(olay, hermitize(out));
}

DensityOperator apply(const BipartiteChannel& n, const DensityOperator& rho) {
  return DensityOperator(apply_to_operator(n, rho.op()));
}

BipartiteChannel compose(const BipartiteChannel& n2, const BipartiteChannel& n1) {
  if (n1.dims().out_a != n2.dims().in_a || n1.dims().out_b != n2.dims().in_b)
    throw std::invalid_argument("compose: dimension mismatch");
  // J1 as an operator on (SA, mid_a, mid_b, SB); contract the middle with n2.
  Matrix j = contract_choi(n2.choi().mat(), n2.dims(), n1.choi().mat(),
                           n1.dims().in_a, n1.dims().in_b);
  ChannelDims d{n1.dims().in_a, n1.dims().in_b, n2.dims().out_a,
                n2.dims().out_b};
  return BipartiteChannel(
      HermitianOperator(CPMap::choi_layout(d), hermitize(j)), d);
}

BipartiteChannel tensor_channels(const BipartiteChannel& n1,
                                 const BipartiteChannel& n2) {
  // relabel, tensor, reorder so like sides are adjacent, then flatten back
  // to the canonical four factors
  auto relabel = [](const BipartiteChannel& n, const std::string& sfx) {
    SystemLayout lay({{kLabelSA + sfx, n.dims().in_a},
                      {kLabelA + sfx, n.dims().out_a},
                      {kLabelB + sfx, n.dims().out_b},
                      {kLabelSB + sfx, n.dims().in_b}},
                     {});
    return HermitianOperator(lay, n.choi().mat());
  };
  HermitianOperator big = tensor(relabel(n1, "1"), relabel(n2, "2"));
  std::vector<std::string> order = {"SA1", "SA2", "A1",  "A2",
                                    "B1",  "B2",  "SB1", "SB2"};
  HermitianOperator perm = permute_factors(big, order);
  ChannelDims d{n1.dims().in_a * n2.dims().in_a,
                n1.dims().in_b * n2.dims().in_b,
                n1.dims().out_a * n2.dims().out_a,
                n1.dims().out_b * n2.dims().out_b};
  return BipartiteChannel(HermitianOperator(CPMap::choi_layout(d), perm.mat()),
                          d);
}

BipartiteChannel replacer(const DensityOperator& omega,
                          std::pair<int, int> in_dims) {
  if (omega.layout().factor_count() != 2)
    throw std::invalid_argument("replacer: omega must have two factors (A,B)");
  ChannelDims d{in_dims.first, in_dims.second, omega.layout().factor(0).dim,
                omega.layout().factor(1).dim};
  HermitianOperator om(
      SystemLayout({{kLabelA, d.out_a}, {kLabelB, d.out_b}}, {kLabelB}),
      omega.mat());
  HermitianOperator j = tensor(
      tensor(
          HermitianOperator::identity(SystemLayout::single(kLabelSA, d.in_a)),
          om),
      HermitianOperator::identity(SystemLayout::single(kLabelSB, d.in_b)));
  return BipartiteChannel(HermitianOperator(CPMap::choi_layout(d), j.mat()), d);
}

BipartiteChannel embed_point_to_point(const Matrix& choi_lb, int in_dim,
                                      int out_dim) {
  if (choi_lb.rows() != in_dim * out_dim)
    throw std::invalid_argument("embed_point_to_point: Choi size mismatch");
  ChannelDims d{in_dim, 1, 1, out_dim};
  // (L, B) already matches the flattened (SA, A=1, B, SB=1) order
  return BipartiteChannel(
      HermitianOperator(CPMap::choi_layout(d), hermitize(choi_lb)), d);
}

bool is_cpptp(const CPMap& n, double tol) {
  HermitianOperator t = partial_transpose(n.choi(), {kLabelB, kLabelSB});
  return min_eigenvalue(t.mat()) >= -tol;
}

PptSuperchannel::PptSuperchannel(BipartiteChannel pre, BipartiteChannel post,
                                 int mem_a, int mem_b, double tol)
    : pre_(std::move(pre)),
      post_(std::move(post)),
      mem_a_(mem_a),
      mem_b_(mem_b) {
  if (!is_cpptp(pre_, tol))
    throw std::invalid_argument("superchannel: pre-processing is not C-PPT-P");
  if (!is_cpptp(post_, tol))
    throw std::invalid_argument("superchannel: post-processing is not C-PPT-P");
}

BipartiteChannel PptSuperchannel::operator()(const BipartiteChannel& m) const {
  if (pre_.dims().out_a != m.dims().in_a * mem_a_ ||
      pre_.dims().out_b != m.dims().in_b * mem_b_)
    throw std::invalid_argument("superchannel: pre output does not match");
  BipartiteChannel inner =
      (mem_a_ == 1 && mem_b_ == 1)
          ? m
          : tensor_channels(m, BipartiteChannel::identity(mem_a_, mem_b_));
  if (post_.dims().in_a != inner.dims().out_a ||
      post_.dims().in_b != inner.dims().out_b)
    throw std::invalid_argument("superchannel: post input does not match");
  return compose(post_, compose(inner, pre_));
}

Matrix random_local_choi(int din, int dout, std::mt19937_64& rng) {
  const int denv = din;
  std::normal_distribution<double> g;
  Matrix m(dout * denv, din);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(dout * denv, din);
  // J[(l,o),(l',o')] = sum_e V[(o,e),l] conj(V[(o',e),l'])
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (int l = 0; l < din; ++l)
    for (int lp = 0; lp < din; ++lp)
      for (int o = 0; o < dout; ++o)
        for (int op = 0; op < dout; ++op) {
          Complex acc = 0;
          for (int e = 0; e < denv; ++e)
            acc += q(o * denv + e, l) * std::conj(q(op * denv + e, lp));
          j(l * dout + o, lp * dout + op) = acc;
        }
  return hermitize(j);
}

BipartiteChannel random_product_channel(const ChannelDims& d,
                                        std::mt19937_64& rng) {
  Matrix ja = random_local_choi(d.in_a, d.out_a, rng);
  Matrix jb = random_local_choi(d.in_b, d.out_b, rng);
  HermitianOperator a(SystemLayout({{kLabelSA, d.in_a}, {kLabelA, d.out_a}}, {}),
                      ja);
  HermitianOperator b(SystemLayout({{kLabelSB, d.in_b}, {kLabelB, d.out_b}}, {}),
                      jb);
  HermitianOperator prod = tensor(a, b);
  std::vector<std::string> order = {kLabelSA, kLabelA, kLabelB, kLabelSB};
  HermitianOperator perm = permute_factors(prod, order);
  return BipartiteChannel(HermitianOperator(CPMap::choi_layout(d), perm.mat()),
                          d);
}

BipartiteChannel random_cpptp(const ChannelDims& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const int k = 3;
  std::vector<double> w(k);
  double tot = 0;
  for (auto& v : w) {
    v = u(rng);
    tot += v;
  }
  const int n = d.in_a * d.in_b * d.out_a * d.out_b;
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < k; ++i)
    j += (w[i] / tot) * random_product_channel(d, rng).choi().mat();
  return BipartiteChannel(HermitianOperator(CPMap::choi_layout(d), j), d);
}

BipartiteChannel random_channel(const ChannelDims& d, std::uint64_t seed,
                                int env_dim) {
  std::mt19937_64 rng(seed);
  const int din = d.in_a * d.in_b;
  const int dout = d.out_a * d.out_b;
  std::normal_distribution<double> g;
  Matrix m(dout * env_dim, din);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix v = qr.householderQ() * Matrix::Identity(dout * env_dim, din);

  MultiIndex jin({d.in_a, d.out_a, d.out_b, d.in_b});
  MultiIndex inidx({d.in_a, d.in_b});
  MultiIndex outidx({d.out_a, d.out_b});
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (int l = 0; l < din; ++l)
    for (int lp = 0; lp < din; ++lp)
      for (int o = 0; o < dout; ++o)
        for (int op = 0; op < dout; ++op) {
          Complex acc = 0;
          for (int e = 0; e < env_dim; ++e)
            acc += v(o * env_dim + e, l) * std::conj(v(op * env_dim + e, lp));
          j(jin.flatten(std::array{inidx.digit(l, 0), outidx.digit(o, 0),
                                   outidx.digit(o, 1), inidx.digit(l, 1)}),
            jin.flatten(std::array{inidx.digit(lp, 0), outidx.digit(op, 0),
                                   outidx.digit(op, 1), inidx.digit(lp, 1)})) =
              acc;
        }
  return BipartiteChannel(
      HermitianOperator(CPMap::choi_layout(d), hermitize(j)), d);
}

}  // namespace entmeter
