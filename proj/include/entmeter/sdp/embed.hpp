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

#ifndef ENTMETER_SDP_EMBED_HPP
#define ENTMETER_SDP_EMBED_HPP

#include <iosfwd>

#include "entmeter/sdp/problem.hpp"

namespace entmeter::sdp {

// ---------------------------------------------------------------------------
// Isometric coordinates
//
// A d x d Hermitian matrix is parametrized by d^2 real coordinates: the
// diagonal entries, then for each i < j the pair (sqrt2 Re X_ij,
// sqrt2 Im X_ij).  The map is an isometry: hvec(X) . hvec(Y) = <X, Y>.

int hvec_dim(int d);
Eigen::VectorXd hvec(const Matrix& hermitian);
Matrix hvec_to_mat(const Eigen::VectorXd& coords, int d);

// Real symmetric analogue, used for the embedded cone blocks.
int svec_dim(int d);
Eigen::VectorXd svec(const Eigen::MatrixXd& symmetric);
Eigen::MatrixXd svec_to_mat(const Eigen::VectorXd& coords, int d);

/// H -> [[Re H, -Im H], [Im H, Re H]].  Symmetric when H is Hermitian; its
/// spectrum is that of H with every multiplicity doubled, so positive
/// semi-definiteness is preserved in both directions and traces double.
Eigen::MatrixXd embed_real(const Matrix& hermitian);
/// Average of the two embedded copies, mapping back to a complex matrix.
Matrix unembed_real(const Eigen::MatrixXd& embedded);

// ---------------------------------------------------------------------------
// Real symmetric cone program
//
// minimize    c'x + c0
// subject to  A x = b
//             s = h - G x,  s in a product of real PSD cones
//
// Variables x are the isometric Hermitian coordinates of the complex
// problem's variables, so objective values match the complex problem; the
// factor-of-two blowup of embedded inner products (the "1/2 rescale") is
// absorbed by keeping the objective in these coordinates.  G is stored
// column-wise as sparse per-block entries.

struct RealConeProgram {
  struct GEntry {
    int r, c;
    double v;
  };
  struct GBlockCol {
    int block;
    std::vector<GEntry> entries;
  };
  struct VarSlot {
    std::string name;
    SystemLayout layout;
    int offset;
    int coords;
  };

  int nvar = 0;
  Eigen::VectorXd c;
  double c0 = 0.0;
  Sense sense = Sense::Minimize;  // c is stored for the minimizing form

  Eigen::MatrixXd A;  // p x n
  Eigen::VectorXd b;

  std::vector<int> block_dims;
  std::vector<std::string> block_names;
  std::vector<Eigen::MatrixXd> hblocks;       // per-block constants
  std::vector<std::vector<GBlockCol>> gcols;  // per-variable-coordinate

  std::vector<VarSlot> slots;

  int cone_dim() const;  // total svec length over blocks
  int eq_rows() const { return static_cast<int>(A.rows()); }

  // Dense realizations, mainly for tests and the diagnostic dump.
  Eigen::MatrixXd dense_g() const;
  Eigen::VectorXd dense_h() const;
};

/// Lower a Hermitian-cone problem to the real symmetric cone program above.
RealConeProgram embed_real(const SdpProblem& p);

/// Self-describing text dump (dimensions, cones, constraint matrices).
void dump_cone_program(const RealConeProgram& prog, std::ostream& os);

}  // namespace entmeter::sdp

#endif  // ENTMETER_SDP_EMBED_HPP
