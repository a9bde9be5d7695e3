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

#include "entmeter/harness.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>

#include "entmeter/divergences.hpp"
#include "entmeter/parallel.hpp"

namespace entmeter::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix random_hermitian(int d, std::mt19937_64& rng) {
  return hermitize(gaussian_matrix(d, d, rng));
}

Matrix random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, d, rng));
  return qr.householderQ() * Matrix::Identity(d, d);
}

Matrix random_density_matrix(int d, int rank, std::mt19937_64& rng) {
  Matrix g = gaussian_matrix(d, rank, rng);
  Matrix rho = g * g.adjoint();
  return hermitize(rho / rho.trace().real());
}

// N(X) for a point-to-point Choi operator J on (L, Out).
Matrix apply_p2p(const Matrix& choi, int din, int dout, const Matrix& x) {
  Matrix out = Matrix::Zero(dout, dout);
  for (int o = 0; o < dout; ++o)
    for (int op = 0; op < dout; ++op) {
      Complex acc = 0;
      for (int l = 0; l < din; ++l)
        for (int lp = 0; lp < din; ++lp)
          acc += choi(l * dout + o, lp * dout + op) * x(l, lp);
      out(o, op) = acc;
    }
  return out;
}

struct Ctx {
  const SuiteConfig& cfg;
  std::uint64_t seed = 0;
  int trial = 0;

  std::mt19937_64 rng() const { return std::mt19937_64(seed); }
  std::uint64_t subseed(int salt) const {
    return splitmix64(seed + 0x51ed0 * (salt + 1));
  }
  BipartiteChannel cpptp(const ChannelDims& d, int salt) const {
    if (cfg.cpptp_source) return cfg.cpptp_source(d, subseed(salt));
    return random_cpptp(d, subseed(salt));
  }
  MeasureOptions measure_opts() const {
    MeasureOptions m;
    m.solver = cfg.solver;
    return m;
  }
  SystemLayout state_layout() const {
    return SystemLayout({{"A", cfg.dim_a}, {"B", cfg.dim_b}}, {"B"});
  }
  ChannelDims channel_dims() const {
    return {cfg.dim_a, cfg.dim_b, cfg.dim_a, cfg.dim_b};
  }
};

// Per trial, the minimum margin (rhs + slack - lhs) over every inequality
// checked; negative means violation.
struct TrialOutcome {
  double margin = kInf;
  std::string note;

  void track(double m, const std::string& what) {
    if (m < margin) {
      margin = m;
      note = what;
    }
  }
  // equality check |dev| <= slack
  void track_eq(double dev, double slack, const std::string& what) {
    track(slack - std::abs(dev), what);
  }
};

using PropertyFn = TrialOutcome (*)(const Ctx&);

struct Property {
  std::string name;
  std::string suite;
  std::string anchor;
  PropertyFn fn;
};

// ---------------------------------------------------------------------------
// operator identities

TrialOutcome prop_pt_self_adjoint(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  HermitianOperator x(lay, random_hermitian(d, rng));
  HermitianOperator y(lay, random_hermitian(d, rng));
  auto tb = [&](const HermitianOperator& h) {
    return partial_transpose(h, {"B"});
  };
  const double lhs = (tb(x).mat().adjoint() * y.mat()).trace().real();
  const double rhs = (x.mat().adjoint() * tb(y).mat()).trace().real();
  out.track_eq(lhs - rhs, ctx.cfg.slack, "inner-product adjointness");
  out.track_eq((tb(tb(x)).mat() - x.mat()).cwiseAbs().maxCoeff(),
               ctx.cfg.slack, "involution");
  return out;
}

TrialOutcome prop_choi_contraction(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = (ctx.trial % 2 == 0) ? 2 : 3;  // maximally entangled rank
  const int ds = 2;
  Matrix q = random_hermitian(ds * d, rng);

  // contraction of Q_{SL} (x) I_A against the unnormalized maximally
  // entangled vector equals Tr_L Q
  Vector ups = unnormalized_max_ent(d);
  Matrix lhs = Matrix::Zero(ds, ds);
  for (int s = 0; s < ds; ++s)
    for (int sp = 0; sp < ds; ++sp) {
      Complex acc = 0;
      for (int l = 0; l < d; ++l)
        for (int a = 0; a < d; ++a)
          for (int lp = 0; lp < d; ++lp)
            acc += std::conj(ups(l * d + a)) * q(s * d + l, sp * d + lp) *
                   ups(lp * d + a);
      lhs(s, sp) = acc;
    }
  SystemLayout sl({{"S", ds}, {"L", d}}, {});
  Matrix rhs = partial_trace(HermitianOperator(sl, q), {"L"}).mat();
  out.track_eq((lhs - rhs).cwiseAbs().maxCoeff(), ctx.cfg.slack,
               "post-selected contraction");

  // (Q_{SL} (x) I_A)|ups>_{L:A} = (T_A(Q_{SA}) (x) I_L)|ups>_{L:A}
  SystemLayout sa({{"S", ds}, {"A", d}}, {});
  Matrix qt = partial_transpose(HermitianOperator(sa, q), {"A"}).mat();
  Matrix v1(ds * d * d, ds), v2(ds * d * d, ds);
  MultiIndex idx({ds, d, d});
  for (int s = 0; s < ds; ++s)
    for (int l = 0; l < d; ++l)
      for (int a = 0; a < d; ++a)
        for (int sp = 0; sp < ds; ++sp) {
          v1(idx.flatten(std::array{s, l, a}), sp) = q(s * d + l, sp * d + a);
          v2(idx.flatten(std::array{s, l, a}), sp) = qt(s * d + a, sp * d + l);
        }
  out.track_eq((v1 - v2).cwiseAbs().maxCoeff(), ctx.cfg.slack,
               "transpose trick");
  return out;
}

TrialOutcome prop_pt_spectrum(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = 2 + (ctx.trial % 2);
  Vector ups = unnormalized_max_ent(d);
  SystemLayout la({{"L", d}, {"A", d}}, {});
  HermitianOperator uu(la, Matrix(ups * ups.adjoint()));
  Matrix tl = partial_transpose(uu, {"L"}).mat();
  Matrix ta = partial_transpose(uu, {"A"}).mat();
  out.track_eq((tl - ta).cwiseAbs().maxCoeff(), ctx.cfg.slack,
               "transpose symmetry of the maximally entangled projector");

  SystemLayout lay = ctx.state_layout();
  Matrix x = random_hermitian(lay.total_dim(), rng);
  HermitianOperator xo(lay, x);
  out.track_eq(partial_transpose(xo, {"B"}).trace() - xo.trace(),
               ctx.cfg.slack, "trace preservation");

  // full transpose preserves the eigenvalue multiset
  HermitianOperator xt = partial_transpose(xo, {"A", "B"});
  Eigen::SelfAdjointEigenSolver<Matrix> e1(x, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> e2(xt.mat(), Eigen::EigenvaluesOnly);
  out.track_eq((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff(),
               ctx.cfg.slack, "full-transpose spectrum");
  return out;
}

// ---------------------------------------------------------------------------
// channel identities

TrialOutcome prop_choi_apply_agreement(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const ChannelDims cd = ctx.channel_dims();
  const int din = cd.in_a * cd.in_b, dout = cd.out_a * cd.out_b, denv = 2;
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dout * denv, din, rng));
  Matrix v = qr.householderQ() * Matrix::Identity(dout * denv, din);
  auto direct = [&](const Matrix& x) {
    Matrix big = v * x * v.adjoint();
    return partial_trace_raw(big, {dout, denv}, {false, true});
  };
  BipartiteChannel chan = choi_of(direct, cd);
  Matrix rho = random_density_matrix(din, din, rng);
  DensityOperator state(ctx.state_layout(), rho);
  Matrix via_choi = apply(chan, state).mat();
  out.track_eq((via_choi - direct(rho)).cwiseAbs().maxCoeff(), ctx.cfg.slack,
               "apply through the Choi operator");
  return out;
}

TrialOutcome prop_compose_associative(const Ctx& ctx) {
  TrialOutcome out;
  const ChannelDims cd = ctx.channel_dims();
  BipartiteChannel a = random_channel(cd, ctx.subseed(1));
  BipartiteChannel b = random_channel(cd, ctx.subseed(2));
  BipartiteChannel c = random_channel(cd, ctx.subseed(3));
  Matrix lhs = compose(compose(c, b), a).choi().mat();
  Matrix rhs = compose(c, compose(b, a)).choi().mat();
  out.track_eq((lhs - rhs).cwiseAbs().maxCoeff(), ctx.cfg.slack,
               "associativity");
  BipartiteChannel id = BipartiteChannel::identity(cd.out_a, cd.out_b);
  out.track_eq(
      (compose(id, a).choi().mat() - a.choi().mat()).cwiseAbs().maxCoeff(),
      ctx.cfg.slack, "identity absorbs");
  return out;
}

TrialOutcome prop_cpptp_superchannel_closure(const Ctx& ctx) {
  TrialOutcome out;
  const ChannelDims cd = ctx.channel_dims();
  const int mem = (ctx.trial % 3 == 2) ? 2 : 1;
  BipartiteChannel pre = ctx.cpptp(
      {cd.in_a, cd.in_b, cd.in_a * mem, cd.in_b * mem}, 1);
  BipartiteChannel post = ctx.cpptp(
      {cd.out_a * mem, cd.out_b * mem, cd.out_a, cd.out_b}, 2);
  PptSuperchannel theta(pre, post, mem, mem);
  BipartiteChannel m = ctx.cpptp(cd, 3);
  BipartiteChannel tm = theta(m);
  HermitianOperator tj = partial_transpose(tm.choi(), {kLabelB, kLabelSB});
  out.track(min_eigenvalue(tj.mat()) + 1e-8, "C-PPT-P closure");
  return out;
}

// ---------------------------------------------------------------------------
// divergences

TrialOutcome prop_divergence_dp(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = 4, dout = 4;
  Matrix rho = random_density_matrix(d, d, rng);
  Matrix sig = random_density_matrix(d, d, rng);
  Matrix choi = random_local_choi(d, dout, rng);
  Matrix nr = hermitize(apply_p2p(choi, d, dout, rho));
  Matrix ns = hermitize(apply_p2p(choi, d, dout, sig));
  for (double alpha : {0.5, 2.0, 10.0}) {
    const double before = sandwiched_renyi(rho, sig, alpha).value;
    const double after = sandwiched_renyi(nr, ns, alpha).value;
    out.track(before - after + ctx.cfg.slack,
              "data processing at alpha=" + std::to_string(alpha));
  }
  return out;
}

TrialOutcome prop_renyi_alpha_monotone(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = 4;
  Matrix rho = random_density_matrix(d, d, rng);
  Matrix sig = random_density_matrix(d, d, rng);
  const double a = sandwiched_renyi(rho, sig, 0.5).value;
  const double b = sandwiched_renyi(rho, sig, 2.0).value;
  const double c = sandwiched_renyi(rho, sig, 64.0).value;
  const double dm = max_relative_entropy(rho, sig).value;
  out.track(b - a + ctx.cfg.slack, "alpha 1/2 <= alpha 2");
  out.track(c - b + ctx.cfg.slack, "alpha 2 <= alpha 64");
  out.track(dm - c + ctx.cfg.slack, "alpha 64 <= max");
  return out;
}

TrialOutcome prop_divergence_invariance(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = 3;
  Matrix rho = random_density_matrix(d, d, rng);
  Matrix sig = random_density_matrix(d, d, rng);
  Matrix u = random_unitary(d, rng);
  Matrix tau = random_density_matrix(2, 2, rng);
  auto conj = [&](const Matrix& m) { return hermitize(u * m * u.adjoint()); };
  auto kron = [](const Matrix& x, const Matrix& y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) =
            x(i, j) * y;
    return out;
  };
  struct Div {
    const char* name;
    std::function<double(const Matrix&, const Matrix&)> f;
  };
  const std::vector<Div> divs = {
      {"relative", [](const Matrix& a, const Matrix& b) {
         return relative_entropy(a, b).value;
       }},
      {"max", [](const Matrix& a, const Matrix& b) {
         return max_relative_entropy(a, b).value;
       }},
      {"renyi2", [](const Matrix& a, const Matrix& b) {
         return sandwiched_renyi(a, b, 2.0).value;
       }}};
  for (const auto& dv : divs) {
    const double base = dv.f(rho, sig);
    out.track_eq(dv.f(conj(rho), conj(sig)) - base, ctx.cfg.slack,
                 std::string(dv.name) + " unitary invariance");
    out.track_eq(dv.f(kron(rho, tau), kron(sig, tau)) - base, ctx.cfg.slack,
                 std::string(dv.name) + " tensor invariance");
  }
  return out;
}

TrialOutcome prop_renyi_limits(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = 3;
  Matrix rho = random_density_matrix(d, d, rng);
  Matrix sig = random_density_matrix(d, d, rng);
  const double dref = relative_entropy(rho, sig).value;
  out.track_eq(sandwiched_renyi(rho, sig, 1.0 + 1e-4).value - dref, 1e-2,
               "limit alpha -> 1+");
  out.track_eq(sandwiched_renyi(rho, sig, 1.0 - 1e-4).value - dref, 1e-2,
               "limit alpha -> 1-");
  const double dmax = max_relative_entropy(rho, sig).value;
  const double dbig = sandwiched_renyi(rho, sig, 16384.0).value;
  out.track(dmax - dbig + 1e-9, "approach from below");
  out.track(1e-3 - (dmax - dbig), "limit alpha -> infinity gap");
  return out;
}

// ---------------------------------------------------------------------------
// state and channel measures

double five_measure_max(const DensityOperator& rho, const MeasureOptions& mo) {
  double worst = 0.0;
  worst = std::max(worst, std::abs(log_negativity_state(rho, mo).value));
  worst = std::max(worst, std::abs(max_rains_state(rho, mo).value));
  worst = std::max(worst, std::abs(kappa_entanglement_state(rho, mo).value));
  worst = std::max(worst, std::abs(min_rains_state(rho, mo).value));
  worst = std::max(worst, std::abs(one_shot_exact_distillable(rho, mo).value));
  return worst;
}

TrialOutcome prop_bell_battery(const Ctx& ctx) {
  TrialOutcome out;
  const int d = 2 + (ctx.trial % 3);
  DensityOperator phi = maximally_entangled(d);
  const double want = std::log2(static_cast<double>(d));
  MeasureOptions mo = ctx.measure_opts();
  out.track_eq(log_negativity_state(phi, mo).value - want, ctx.cfg.slack,
               "log-negativity");
  out.track_eq(max_rains_state(phi, mo).value - want, ctx.cfg.slack,
               "max-Rains");
  out.track_eq(kappa_entanglement_state(phi, mo).value - want, ctx.cfg.slack,
               "kappa");
  out.track_eq(min_rains_state(phi, mo).value - want, ctx.cfg.slack,
               "min-Rains");
  out.track_eq(one_shot_exact_distillable(phi, mo).value - want,
               ctx.cfg.slack, "one-shot exact distillable");
  return out;
}

TrialOutcome prop_faithfulness_ppt_states(const Ctx& ctx) {
  TrialOutcome out;
  DensityOperator rho = (ctx.trial % 4 == 3)
                            ? ppt_entangled_3x3(ctx.subseed(1))
                            : random_ppt_state(ctx.state_layout(),
                                               ctx.subseed(1));
  out.track(ctx.cfg.slack - five_measure_max(rho, ctx.measure_opts()),
            "every measure vanishes on a PPT state");
  return out;
}

TrialOutcome prop_faithfulness_cpptp_channels(const Ctx& ctx) {
  TrialOutcome out;
  MeasureOptions mo = ctx.measure_opts();
  BipartiteChannel n = ctx.cpptp(ctx.channel_dims(), 1);
  out.track(ctx.cfg.slack - std::abs(log_negativity_channel(n, mo).value),
            "E_N vanishes");
  out.track(ctx.cfg.slack - std::abs(max_rains_channel(n, mo).value),
            "R_max vanishes");
  out.track(ctx.cfg.slack - std::abs(kappa_entanglement_channel(n, mo).value),
            "E_kappa vanishes");
  if (ctx.trial % 5 == 4) {
    // fully depolarizing point-to-point channel: C-PPT-P, all measures zero
    const int d = ctx.cfg.dim_a;
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (int l = 0; l < d; ++l)
      for (int o = 0; o < d; ++o) choi(l * d + o, l * d + o) = 1.0 / d;
    BipartiteChannel dep = embed_point_to_point(choi, d, d);
    if (!is_cpptp(dep)) out.track(-1.0, "depolarizing must be C-PPT-P");
    out.track(ctx.cfg.slack -
                  std::abs(min_rains_channel_lower(choi, d, d, 3, 3,
                                                   ctx.subseed(2), mo)
                               .value),
              "min-Rains lower bound vanishes");
  }
  return out;
}

TrialOutcome prop_identity_channel_unit(const Ctx& ctx) {
  TrialOutcome out;
  MeasureOptions mo = ctx.measure_opts();
  Vector ups = unnormalized_max_ent(2);
  Matrix choi = ups * ups.adjoint();
  BipartiteChannel id2 = embed_point_to_point(choi, 2, 2);
  out.track_eq(log_negativity_channel(id2, mo).value - 1.0, ctx.cfg.slack,
               "E_N of the identity");
  out.track_eq(max_rains_channel(id2, mo).value - 1.0, ctx.cfg.slack,
               "R_max of the identity");
  out.track_eq(kappa_entanglement_channel(id2, mo).value - 1.0, ctx.cfg.slack,
               "E_kappa of the identity");
  const double lb =
      min_rains_channel_lower(choi, 2, 2, 2, 2, ctx.subseed(1), mo).value;
  out.track(lb - 1.0 + ctx.cfg.slack, "min-Rains lower bound reaches 1");
  out.track(1.0 - lb + ctx.cfg.slack, "min-Rains lower bound stays below 1");
  return out;
}

TrialOutcome prop_pd_agreement_state(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  std::uniform_int_distribution<int> rank_dist(1, d);
  DensityOperator rho(lay, random_density_matrix(d, rank_dist(rng), rng));
  MeasureOptions mo = ctx.measure_opts();
  mo.cross_check = true;
  MeasureReport en = log_negativity_state(rho, mo);
  out.track(ctx.cfg.slack * std::max(1.0, std::abs(en.primal_value)) - en.gap,
            "E_N primal/dual gap");
  out.track_eq(std::log2(en.dual_value) - en.value,
               ctx.cfg.slack * std::max(1.0, en.value),
               "E_N SDP against the spectral value");
  MeasureReport rm = max_rains_state(rho, mo);
  out.track(ctx.cfg.slack * std::max(1.0, std::abs(rm.primal_value)) - rm.gap,
            "R_max primal/dual gap");
  return out;
}

TrialOutcome prop_pd_agreement_channel(const Ctx& ctx) {
  TrialOutcome out;
  BipartiteChannel n = random_channel(ctx.channel_dims(), ctx.subseed(1));
  MeasureOptions mo = ctx.measure_opts();
  mo.cross_check = true;
  MeasureReport en = log_negativity_channel(n, mo);
  out.track(ctx.cfg.slack * std::max(1.0, std::abs(en.primal_value)) - en.gap,
            "E_N channel primal/dual gap");
  MeasureReport rm = max_rains_channel(n, mo);
  out.track(ctx.cfg.slack * std::max(1.0, std::abs(rm.primal_value)) - rm.gap,
            "R_max channel primal/dual gap");
  return out;
}

TrialOutcome prop_ordering_chain(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  std::uniform_int_distribution<int> rank_dist(1, d);
  DensityOperator rho(lay, random_density_matrix(d, rank_dist(rng), rng));
  MeasureOptions mo = ctx.measure_opts();
  const double rmax = max_rains_state(rho, mo).value;
  const double en = log_negativity_state(rho, mo).value;
  const double em = min_rains_state(rho, mo).value;
  const double w0 = one_shot_exact_distillable(rho, mo).value;
  out.track(rmax + ctx.cfg.slack, "R_max nonnegative");
  out.track(en - rmax + ctx.cfg.slack, "R_max below E_N");
  out.track(em - w0 + ctx.cfg.slack, "one-shot rate below E_M");
  return out;
}

TrialOutcome prop_state_measure_monotone(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  DensityOperator rho(lay, random_density_matrix(d, d, rng));
  BipartiteChannel local = random_product_channel(ctx.channel_dims(), rng);
  DensityOperator sig = apply(local, rho);
  MeasureOptions mo = ctx.measure_opts();
  out.track(log_negativity_state(rho, mo).value -
                log_negativity_state(sig, mo).value + ctx.cfg.slack,
            "E_N monotone under local channels");
  out.track(max_rains_state(rho, mo).value - max_rains_state(sig, mo).value +
                ctx.cfg.slack,
            "R_max monotone under local channels");
  out.track(kappa_entanglement_state(rho, mo).value -
                kappa_entanglement_state(sig, mo).value + ctx.cfg.slack,
            "E_kappa monotone under local channels");
  return out;
}

TrialOutcome prop_reduction_to_states(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  DensityOperator rho(lay, random_density_matrix(d, d, rng));
  MeasureOptions mo = ctx.measure_opts();
  BipartiteChannel rep = replacer(rho, {ctx.cfg.dim_a, ctx.cfg.dim_b});
  out.track_eq(log_negativity_channel(rep, mo).value -
                   log_negativity_state(rho, mo).value,
               ctx.cfg.slack, "E_N reduction");
  out.track_eq(
      max_rains_channel(rep, mo).value - max_rains_state(rho, mo).value,
      ctx.cfg.slack, "R_max reduction");
  out.track_eq(kappa_entanglement_channel(rep, mo).value -
                   kappa_entanglement_state(rho, mo).value,
               ctx.cfg.slack, "E_kappa reduction");
  return out;
}

TrialOutcome prop_kappa_p2p_reduction(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  const int d = ctx.cfg.dim_a;
  Matrix choi = random_local_choi(d, d, rng);
  MeasureOptions mo = ctx.measure_opts();
  const double bip =
      kappa_entanglement_channel(embed_point_to_point(choi, d, d), mo).value;
  const double p2p = kappa_entanglement_p2p(choi, d, d, mo).value;
  out.track_eq(bip - p2p, ctx.cfg.slack, "bipartite formula specializes");
  return out;
}

DensityOperator tensor_pair(const DensityOperator& rho,
                            const DensityOperator& sigma) {
  HermitianOperator a(
      SystemLayout({{"A1", rho.layout().factor(0).dim},
                    {"B1", rho.layout().factor(1).dim}},
                   {"B1"}),
      rho.mat());
  HermitianOperator b(
      SystemLayout({{"A2", sigma.layout().factor(0).dim},
                    {"B2", sigma.layout().factor(1).dim}},
                   {"B2"}),
      sigma.mat());
  return DensityOperator(tensor(a, b));
}

TrialOutcome prop_additivity_kappa(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  DensityOperator rho(lay, random_density_matrix(d, d, rng));
  DensityOperator sig(lay, random_density_matrix(d, d, rng));
  MeasureOptions mo = ctx.measure_opts();
  const double joint = kappa_entanglement_state(tensor_pair(rho, sig), mo).value;
  const double split = kappa_entanglement_state(rho, mo).value +
                       kappa_entanglement_state(sig, mo).value;
  out.track_eq(joint - split, ctx.cfg.slack, "kappa additivity");
  return out;
}

TrialOutcome prop_additivity_min_rains(const Ctx& ctx) {
  TrialOutcome out;
  auto rng = ctx.rng();
  SystemLayout lay = ctx.state_layout();
  const int d = lay.total_dim();
  std::uniform_int_distribution<int> rank_dist(2, d);
  DensityOperator rho(lay, random_density_matrix(d, rank_dist(rng), rng));
  DensityOperator sig(lay, random_density_matrix(d, rank_dist(rng), rng));
  MeasureOptions mo = ctx.measure_opts();
  const double joint = min_rains_state(tensor_pair(rho, sig), mo).value;
  const double split =
      min_rains_state(rho, mo).value + min_rains_state(sig, mo).value;
  out.track_eq(joint - split, ctx.cfg.slack, "min-Rains additivity");
  return out;
}

TrialOutcome prop_subadditivity_rmax(const Ctx& ctx) {
  TrialOutcome out;
  const ChannelDims cd = ctx.channel_dims();
  BipartiteChannel n1 = random_channel(cd, ctx.subseed(1));
  BipartiteChannel n2 = random_channel(cd, ctx.subseed(2));
  MeasureOptions mo = ctx.measure_opts();
  const double joint = max_rains_channel(compose(n2, n1), mo).value;
  const double split =
      max_rains_channel(n1, mo).value + max_rains_channel(n2, mo).value;
  out.track(split - joint + ctx.cfg.slack, "serial subadditivity");
  return out;
}

TrialOutcome prop_superchannel_monotone(const Ctx& ctx) {
  TrialOutcome out;
  const ChannelDims cd = ctx.channel_dims();
  const int mem = (ctx.trial % 3 == 2) ? 2 : 1;
  BipartiteChannel pre =
      ctx.cpptp({cd.in_a, cd.in_b, cd.in_a * mem, cd.in_b * mem}, 1);
  BipartiteChannel post =
      ctx.cpptp({cd.out_a * mem, cd.out_b * mem, cd.out_a, cd.out_b}, 2);
  PptSuperchannel theta(pre, post, mem, mem);
  BipartiteChannel m = random_channel(cd, ctx.subseed(3));
  BipartiteChannel tm = theta(m);
  MeasureOptions mo = ctx.measure_opts();
  out.track(log_negativity_channel(m, mo).value -
                log_negativity_channel(tm, mo).value + ctx.cfg.slack,
            "E_N monotone");
  out.track(max_rains_channel(m, mo).value - max_rains_channel(tm, mo).value +
                ctx.cfg.slack,
            "R_max monotone");
  out.track(kappa_entanglement_channel(m, mo).value -
                kappa_entanglement_channel(tm, mo).value + ctx.cfg.slack,
            "E_kappa monotone");
  return out;
}

DensityOperator random_amortization_input(const Ctx& ctx, int salt) {
  auto rng = std::mt19937_64(ctx.subseed(salt));
  SystemLayout lay({{"LA", 2},
                    {"Ain", ctx.cfg.dim_a},
                    {"Bin", ctx.cfg.dim_b},
                    {"LB", 2}},
                   {"Bin", "LB"});
  const int d = lay.total_dim();
  return DensityOperator(lay, random_density_matrix(d, d, rng));
}

TrialOutcome prop_amortization_kappa(const Ctx& ctx) {
  TrialOutcome out;
  BipartiteChannel n = random_channel(ctx.channel_dims(), ctx.subseed(1));
  DensityOperator rho = random_amortization_input(ctx, 2);
  MeasureOptions mo = ctx.measure_opts();
  const double gap = amortized_kappa_gap(n, rho, mo);
  const double channel = kappa_entanglement_channel(n, mo).value;
  out.track(channel - gap + ctx.cfg.slack, "amortized kappa gap");
  return out;
}

TrialOutcome prop_amortization_rmax(const Ctx& ctx) {
  TrialOutcome out;
  BipartiteChannel n = random_channel(ctx.channel_dims(), ctx.subseed(1));
  DensityOperator rho = random_amortization_input(ctx, 2);
  MeasureOptions mo = ctx.measure_opts();
  const double gap = amortized_max_rains_gap(n, rho, mo);
  const double channel = max_rains_channel(n, mo).value;
  out.track(channel - gap + ctx.cfg.slack, "amortized max-Rains gap");
  return out;
}

TrialOutcome prop_bound_chain_rmax(const Ctx& ctx) {
  TrialOutcome out;
  const ChannelDims cd = ctx.channel_dims();
  BipartiteChannel n = random_channel(cd, ctx.subseed(1));
  BipartiteChannel p2 = ctx.cpptp(cd, 2);
  BipartiteChannel p3 = ctx.cpptp(cd, 3);
  DensityOperator rho0 = random_ppt_state(ctx.state_layout(), ctx.subseed(4));
  DensityOperator s1 = apply(n, rho0);
  DensityOperator r1 = apply(p2, s1);
  DensityOperator s2 = apply(n, r1);
  DensityOperator omega = apply(p3, s2);
  MeasureOptions mo = ctx.measure_opts();
  const double lhs = max_rains_state(omega, mo).value;
  const double rhs = 2.0 * max_rains_channel(n, mo).value;
  out.track(rhs - lhs + ctx.cfg.slack, "two-use distillation bound");
  return out;
}

const std::vector<Property>& registry() {
  static const std::vector<Property> props = {
      {"pt-self-adjoint", "operators", "transpose-self-adjoint",
       prop_pt_self_adjoint},
      {"choi-contraction", "operators", "post-selected-teleportation",
       prop_choi_contraction},
      {"pt-spectrum", "operators", "transpose-spectrum", prop_pt_spectrum},
      {"choi-apply-agreement", "channels", "choi-application",
       prop_choi_apply_agreement},
      {"compose-associative", "channels", "serial-composition",
       prop_compose_associative},
      {"cpptp-superchannel-closure", "channels", "free-operations-closure",
       prop_cpptp_superchannel_closure},
      {"divergence-data-processing", "divergences", "data-processing",
       prop_divergence_dp},
      {"renyi-alpha-monotone", "divergences", "alpha-monotonicity",
       prop_renyi_alpha_monotone},
      {"divergence-invariance", "divergences", "isometric-invariance",
       prop_divergence_invariance},
      {"renyi-limits", "divergences", "renyi-limits", prop_renyi_limits},
      {"bell-battery", "bell", "maximally-entangled-battery",
       prop_bell_battery},
      {"faithfulness-ppt-states", "faithfulness", "state-faithfulness",
       prop_faithfulness_ppt_states},
      {"faithfulness-cpptp-channels", "faithfulness", "channel-faithfulness",
       prop_faithfulness_cpptp_channels},
      {"identity-channel-unit", "faithfulness", "identity-channel-value",
       prop_identity_channel_unit},
      {"pd-agreement-state", "pd-agreement", "state-duality",
       prop_pd_agreement_state},
      {"pd-agreement-channel", "pd-agreement", "channel-duality",
       prop_pd_agreement_channel},
      {"ordering-chain", "ordering", "measure-ordering", prop_ordering_chain},
      {"state-measure-monotone", "ordering", "free-operation-monotonicity",
       prop_state_measure_monotone},
      {"reduction-to-states", "reduction", "replacer-reduction",
       prop_reduction_to_states},
      {"kappa-p2p-reduction", "reduction", "point-to-point-reduction",
       prop_kappa_p2p_reduction},
      {"additivity-kappa", "additivity", "kappa-additivity",
       prop_additivity_kappa},
      {"additivity-min-rains", "additivity", "min-rains-additivity",
       prop_additivity_min_rains},
      {"subadditivity-rmax", "subadditivity", "serial-subadditivity",
       prop_subadditivity_rmax},
      {"superchannel-monotone", "superchannel", "superchannel-monotonicity",
       prop_superchannel_monotone},
      {"amortization-kappa", "amortization", "kappa-amortization",
       prop_amortization_kappa},
      {"amortization-rmax", "amortization", "max-rains-amortization",
       prop_amortization_rmax},
      {"bound-chain-rmax", "boundchain", "distillation-bound-chain",
       prop_bound_chain_rmax},
  };
  return props;
}

const Property& find_property(const std::string& name) {
  for (const auto& p : registry())
    if (p.name == name) return p;
  throw std::invalid_argument("harness: unknown property '" + name + "'");
}

}  // namespace

DensityOperator random_state(const SystemLayout& layout, int rank,
                             std::uint64_t seed) {
  if (rank < 1 || rank > layout.total_dim())
    throw std::invalid_argument("random_state: rank out of range");
  std::mt19937_64 rng(seed);
  return DensityOperator(layout,
                         random_density_matrix(layout.total_dim(), rank, rng));
}

DensityOperator random_pure(const SystemLayout& layout, std::uint64_t seed) {
  return random_state(layout, 1, seed);
}

DensityOperator random_ppt_state(const SystemLayout& layout,
                                 std::uint64_t seed) {
  if (layout.factor_count() != 2)
    throw std::invalid_argument("random_ppt_state: layout must be (A,B)");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0);
  const int da = layout.factor(0).dim, db = layout.factor(1).dim;
  const int k = da * db + 1;
  Matrix rho = Matrix::Zero(da * db, da * db);
  std::vector<double> w(k);
  double tot = 0;
  for (auto& v : w) {
    v = ex(rng);
    tot += v;
  }
  for (int i = 0; i < k; ++i) {
    Matrix a = random_density_matrix(da, da, rng);
    Matrix b = random_density_matrix(db, db, rng);
    for (int r = 0; r < da; ++r)
      for (int c = 0; c < da; ++c)
        rho.block(r * db, c * db, db, db) += (w[i] / tot) * a(r, c) * b;
  }
  return DensityOperator(layout, hermitize(rho));
}

DensityOperator ppt_entangled_3x3(std::uint64_t seed) {
  // tiles construction: complement of an unextendible product basis
  const double s = 1.0 / std::sqrt(2.0);
  auto ket = [](std::initializer_list<double> a) {
    Vector v(3);
    int i = 0;
    for (double x : a) v(i++) = x;
    return v;
  };
  Vector z0 = ket({1, 0, 0}), z1 = ket({0, 1, 0}), z2 = ket({0, 0, 1});
  auto kron = [](const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
    return out;
  };
  std::vector<Vector> tiles = {
      kron(z0, s * (z0 - z1)), kron(z2, s * (z1 - z2)),
      kron(s * (z0 - z1), z2), kron(s * (z1 - z2), z0),
      kron((z0 + z1 + z2) / std::sqrt(3.0), (z0 + z1 + z2) / std::sqrt(3.0))};
  Matrix proj = Matrix::Identity(9, 9);
  for (const auto& t : tiles) proj -= t * t.adjoint();
  Matrix rho = proj / 4.0;

  SystemLayout lay({{"A", 3}, {"B", 3}}, {"B"});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.15);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const double eps = u(rng);
    Matrix sep = random_ppt_state(lay, splitmix64(seed + attempt)).mat();
    Matrix cand = hermitize((1.0 - eps) * rho + eps * sep);
    DensityOperator out(lay, cand);
    if (is_ppt(out, 1e-10)) return out;
  }
  return DensityOperator(lay, rho);
}

int SuiteReport::total_failures() const {
  int acc = 0;
  for (const auto& p : properties) acc += p.failures;
  return acc;
}

void SuiteReport::write(std::ostream& os) const {
  for (const auto& p : properties) {
    os << "property " << p.name << " anchor " << p.anchor << " trials "
       << p.trials << " failures " << p.failures << " worst_margin "
       << p.worst_margin << "\n";
    for (const auto& w : p.failure_witnesses) os << "witness " << w << "\n";
  }
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& p : registry()) {
    if (std::find(names.begin(), names.end(), p.suite) == names.end())
      names.push_back(p.suite);
  }
  names.push_back("all");
  return names;
}

std::vector<std::string> properties_in(const std::string& suite) {
  std::vector<std::string> names;
  for (const auto& p : registry())
    if (suite == "all" || p.suite == suite) names.push_back(p.name);
  if (names.empty())
    throw std::invalid_argument("harness: unknown suite '" + suite + "'");
  return names;
}

PropertyResult run_property(const std::string& name, const SuiteConfig& cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("harness: trials must be >= 1");
  if (cfg.slack <= 0)
    throw std::invalid_argument("harness: slack must be > 0");
  const Property& prop = find_property(name);

  PropertyResult res;
  res.name = prop.name;
  res.anchor = prop.anchor;
  res.trials = cfg.trials;
  res.worst_margin = kInf;

  // trials run in parallel; the report is assembled in trial order so a
  // fixed seed yields an identical report
  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::vector<std::string> errors(cfg.trials);
  std::vector<std::uint64_t> seeds(cfg.trials);
  auto one_trial = [&](int t) {
    Ctx ctx{cfg};
    ctx.trial = t;
    ctx.seed = splitmix64(cfg.seed ^ fnv1a(prop.name)) + 0x9e37ULL * t;
    seeds[t] = ctx.seed;
    try {
      outcomes[t] = prop.fn(ctx);
    } catch (const std::exception& e) {
      outcomes[t].margin = -kInf;
      errors[t] = e.what();
    }
  };
  if (cfg.parallel)
    parallel_for(cfg.trials, one_trial);
  else
    for (int t = 0; t < cfg.trials; ++t) one_trial(t);

  for (int t = 0; t < cfg.trials; ++t) {
    const TrialOutcome& out = outcomes[t];
    if (out.margin < res.worst_margin) res.worst_margin = out.margin;
    if (out.margin < 0) {
      res.failures++;
      std::ostringstream w;
      w << prop.name << " trial " << t << " seed " << seeds[t] << " margin "
        << out.margin << " : " << (errors[t].empty() ? out.note : errors[t]);
      res.failure_witnesses.push_back(w.str());
    }
  }
  return res;
}

SuiteReport run_suite(const std::string& suite, const SuiteConfig& cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("harness: trials must be >= 1");
  const auto names = properties_in(suite);
  SuiteReport rep;
  if (!cfg.parallel) {
    for (const auto& name : names) rep.properties.push_back(run_property(name, cfg));
    return rep;
  }
  // flatten (property, trial) pairs so few-trial runs still use every core
  SuiteConfig serial = cfg;
  serial.parallel = false;
  std::vector<const Property*> props;
  for (const auto& name : names) props.push_back(&find_property(name));
  struct Cell {
    TrialOutcome out;
    std::string error;
    std::uint64_t seed = 0;
  };
  std::vector<std::vector<Cell>> cells(props.size());
  for (auto& c : cells) c.resize(cfg.trials);
  parallel_for(static_cast<int>(props.size()) * cfg.trials, [&](int task) {
    const int pi = task / cfg.trials;
    const int t = task % cfg.trials;
    Ctx ctx{cfg};
    ctx.trial = t;
    ctx.seed = splitmix64(cfg.seed ^ fnv1a(props[pi]->name)) + 0x9e37ULL * t;
    cells[pi][t].seed = ctx.seed;
    try {
      cells[pi][t].out = props[pi]->fn(ctx);
    } catch (const std::exception& e) {
      cells[pi][t].out.margin = -kInf;
      cells[pi][t].error = e.what();
    }
  });
  for (size_t pi = 0; pi < props.size(); ++pi) {
    PropertyResult res;
    res.name = props[pi]->name;
    res.anchor = props[pi]->anchor;
    res.trials = cfg.trials;
    res.worst_margin = kInf;
    for (int t = 0; t < cfg.trials; ++t) {
      const Cell& c = cells[pi][t];
      if (c.out.margin < res.worst_margin) res.worst_margin = c.out.margin;
      if (c.out.margin < 0) {
        res.failures++;
        std::ostringstream w;
        w << res.name << " trial " << t << " seed " << c.seed << " margin "
          << c.out.margin << " : "
          << (c.error.empty() ? c.out.note : c.error);
        res.failure_witnesses.push_back(w.str());
      }
    }
    rep.properties.push_back(std::move(res));
  }
  return rep;
}

}  // namespace entmeter::harness
