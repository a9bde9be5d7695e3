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

#ifndef ENTMETER_CHANNEL_MEASURES_HPP
#define ENTMETER_CHANNEL_MEASURES_HPP

#include "entmeter/channels.hpp"
#include "entmeter/state_measures.hpp"

namespace entmeter {

/// E_N of a bipartite channel: log2 of the diamond norm of T_B o N o T_B'.
/// The reference value comes from the equality-constrained program
/// min ||Tr_AB[V+Y]||_inf with T_{B SB}(V-Y) = J; with cross_check set, the
/// sup-form SDP is solved as well and lands in primal_value.
MeasureReport log_negativity_channel(const CPMap& n,
                                     const MeasureOptions& opts = {});

/// R_max: log2 of min ||Tr_AB[V+Y]||_inf over V,Y >= 0 with
/// T_{B SB}(V-Y) >= J.  cross_check solves the sup-form dual.
MeasureReport max_rains_channel(const BipartiteChannel& n,
                                const MeasureOptions& opts = {});

/// E_kappa: log2 of min ||Tr_AB Q||_inf over Q >= 0 with
/// -T_{B SB}(Q) <= T_{B SB}(J) <= T_{B SB}(Q).
MeasureReport kappa_entanglement_channel(const BipartiteChannel& n,
                                         const MeasureOptions& opts = {});

/// Point-to-point kappa program on a Choi operator J_{LB}:
/// min ||Tr_B Q||_inf over Q >= 0 with -T_B(Q) <= T_B(J) <= T_B(Q).
MeasureReport kappa_entanglement_p2p(const Matrix& choi_lb, int in_dim,
                                     int out_dim,
                                     const MeasureOptions& opts = {});

/// Certified lower bound on the min-Rains information of a point-to-point
/// channel: the maximum of E_M(N(psi)) over sampled and locally optimized
/// pure inputs.  Never reported as exact.
MeasureReport min_rains_channel_lower(const Matrix& choi_lb, int in_dim,
                                      int out_dim, int samples, int restarts,
                                      std::uint64_t seed = 0,
                                      const MeasureOptions& opts = {});

/// E_kappa(L_A A ; B L_B)_omega - E_kappa(L_A A' ; B' L_B)_rho for
/// omega = N(rho); the caller compares against kappa_entanglement_channel.
double amortized_kappa_gap(const BipartiteChannel& n, const DensityOperator& rho,
                           const MeasureOptions& opts = {});

/// Same difference for the max-Rains relative entropy.
double amortized_max_rains_gap(const BipartiteChannel& n,
                               const DensityOperator& rho,
                               const MeasureOptions& opts = {});

}  // namespace entmeter

#endif  // ENTMETER_CHANNEL_MEASURES_HPP
