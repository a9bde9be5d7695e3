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

#ifndef ENTMETER_CHANNELS_HPP
#define ENTMETER_CHANNELS_HPP

#include <functional>
#include <random>
#include <utility>

#include "entmeter/operators.hpp"

namespace entmeter {

struct ChannelDims {
  int in_a = 1, in_b = 1;
  int out_a = 1, out_b = 1;
};

// Fixed factor labels of every Choi operator.
inline const std::string kLabelSA = "SA";
inline const std::string kLabelA = "A";
inline const std::string kLabelB = "B";
inline const std::string kLabelSB = "SB";

/// Completely positive bipartite map stored as its Choi operator on
/// (SA, A, B, SB), with SA ~ A' and SB ~ B' the input references.  The
/// transpose side is always {B, SB}.
class CPMap {
 public:
  CPMap(HermitianOperator choi, ChannelDims dims, double psd_tol = tol::kPsd);

  const HermitianOperator& choi() const { return choi_; }
  const ChannelDims& dims() const { return dims_; }

  static SystemLayout choi_layout(const ChannelDims& d);

 protected:
  HermitianOperator choi_;
  ChannelDims dims_;
};

/// Bipartite channel: a CPMap whose Choi also satisfies trace preservation,
/// Tr_AB J = I on (SA, SB) within 1e-7.
class BipartiteChannel : public CPMap {
 public:
  BipartiteChannel(HermitianOperator choi, ChannelDims dims,
                   double psd_tol = tol::kPsd, double tp_tol = 1e-7);

  static BipartiteChannel identity(int da, int db);
};

using ApplyFn = std::function<Matrix(const Matrix&)>;

/// Choi operator of a linear map given by its action; the map is probed on a
/// few random operators to confirm linearity before lifting.
BipartiteChannel choi_of(const ApplyFn& apply_fn, const ChannelDims& dims);
CPMap choi_of_cp(const ApplyFn& apply_fn, const ChannelDims& dims);

/// Apply the channel to a state on (L_A, A', B', L_B); two-factor states are
/// treated as having trivial side systems.  Output keeps the input labels
/// with the middle dimensions replaced by the channel outputs.
DensityOperator apply(const BipartiteChannel& n, const DensityOperator& rho);
/// Same contraction on a bare Hermitian operator (no state checks).
HermitianOperator apply_to_operator(const CPMap& n, const HermitianOperator& x);

/// Serial composition n2 after n1.
BipartiteChannel compose(const BipartiteChannel& n2, const BipartiteChannel& n1);

/// Parallel composition; A sides and B sides are merged with n1's factors in
/// front of n2's on both sides.
BipartiteChannel tensor_channels(const BipartiteChannel& n1,
                                 const BipartiteChannel& n2);

/// Channel that discards its input and prepares omega (a state on two
/// factors, read as (A, B)).
BipartiteChannel replacer(const DensityOperator& omega, std::pair<int, int> in_dims);

/// Point-to-point channel A->B lifted to a bipartite channel with trivial B'
/// and trivial A-output.  `choi_lb` is the usual Choi operator on (L, B)
/// with L ~ A the input reference.
BipartiteChannel embed_point_to_point(const Matrix& choi_lb, int in_dim,
                                      int out_dim);

/// True when T_{B SB}(choi) has minimum eigenvalue >= -tol, i.e. the channel
/// is completely PPT preserving.
bool is_cpptp(const CPMap& n, double tol = 1e-8);

/// PPT superchannel built from completely-PPT-preserving pre- and
/// post-processing channels that share memory systems of size (mem_a, mem_b).
/// Within each composite side the channel factors come first, memory second.
class PptSuperchannel {
 public:
  PptSuperchannel(BipartiteChannel pre, BipartiteChannel post, int mem_a,
                  int mem_b, double tol = 1e-8);

  BipartiteChannel operator()(const BipartiteChannel& m) const;

  const BipartiteChannel& pre() const { return pre_; }
  const BipartiteChannel& post() const { return post_; }

 private:
  BipartiteChannel pre_, post_;
  int mem_a_, mem_b_;
};

// ---------------------------------------------------------------------------
// Generators

/// Point-to-point channel from a Haar-ish isometric dilation, as a Choi
/// operator on (L, Out).
Matrix random_local_choi(int din, int dout, std::mt19937_64& rng);

/// Product of two local channels, one per side; always C-PPT-P.
BipartiteChannel random_product_channel(const ChannelDims& dims,
                                        std::mt19937_64& rng);

/// Convex mixture of random product channels; always C-PPT-P and
/// deterministic in the seed.
BipartiteChannel random_cpptp(const ChannelDims& dims, std::uint64_t seed);

/// Generic bipartite channel from a joint isometric dilation with a small
/// environment; typically not C-PPT-P.
BipartiteChannel random_channel(const ChannelDims& dims, std::uint64_t seed,
                                int env_dim = 2);

}  // namespace entmeter

#endif  // ENTMETER_CHANNELS_HPP
