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

#include "entmeter/sdp/embed.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

namespace entmeter::sdp {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct SparseEntry {
  int r, c;
  Complex v;
};

// k-th element of the orthonormal Hermitian basis of dimension d, in sparse
// form.  Ordering: diagonal units, then (Re, Im) pairs for i < j.
std::vector<SparseEntry> basis_sparse(int d, int k) {
  if (k < d) return {{k, k, Complex(1.0, 0.0)}};
  int m = k - d;
  const int pair = m / 2;
  const bool imag = m % 2;
  // pair -> (i, j), i < j, lexicographic
  int i = 0, rank = pair;
  while (rank >= d - 1 - i) {
    rank -= d - 1 - i;
    ++i;
  }
  const int j = i + 1 + rank;
  if (!imag)
    return {{i, j, Complex(kInvSqrt2, 0.0)}, {j, i, Complex(kInvSqrt2, 0.0)}};
  return {{i, j, Complex(0.0, kInvSqrt2)}, {j, i, Complex(0.0, -kInvSqrt2)}};
}

std::vector<SparseEntry> apply_pt(const std::vector<SparseEntry>& in,
                                  const SystemLayout& layout,
                                  const std::vector<std::string>& labels) {
  std::vector<bool> mask(layout.factor_count(), false);
  for (const auto& l : labels) mask[layout.index_of(l)] = true;
  MultiIndex idx(layout.dims());
  std::vector<SparseEntry> out;
  out.reserve(in.size());
  std::vector<int> rd(idx.rank()), cd(idx.rank());
  for (const auto& e : in) {
    idx.unflatten(e.r, rd);
    idx.unflatten(e.c, cd);
    int rr = 0, cc = 0;
    for (int f = 0; f < idx.rank(); ++f) {
      if (mask[f]) {
        rr += cd[f] * idx.stride(f);
        cc += rd[f] * idx.stride(f);
      } else {
        rr += rd[f] * idx.stride(f);
        cc += cd[f] * idx.stride(f);
      }
    }
    out.push_back({rr, cc, e.v});
  }
  return out;
}

std::vector<SparseEntry> apply_ptrace(const std::vector<SparseEntry>& in,
                                      const SystemLayout& layout,
                                      const std::vector<std::string>& labels,
                                      const SystemLayout& out_layout) {
  std::vector<bool> mask(layout.factor_count(), false);
  for (const auto& l : labels) mask[layout.index_of(l)] = true;
  MultiIndex idx(layout.dims());
  MultiIndex oidx(out_layout.dims());
  std::vector<SparseEntry> out;
  std::vector<int> rd(idx.rank()), cd(idx.rank());
  for (const auto& e : in) {
    idx.unflatten(e.r, rd);
    idx.unflatten(e.c, cd);
    bool keep = true;
    for (int f = 0; f < idx.rank(); ++f)
      if (mask[f] && rd[f] != cd[f]) {
        keep = false;
        break;
      }
    if (!keep) continue;
    int rr = 0, cc = 0, pos = 0;
    for (int f = 0; f < idx.rank(); ++f) {
      if (mask[f]) continue;
      rr += rd[f] * oidx.stride(pos);
      cc += cd[f] * oidx.stride(pos);
      ++pos;
    }
    out.push_back({rr, cc, e.v});
  }
  return out;
}

std::vector<SparseEntry> apply_embed(const std::vector<SparseEntry>& in,
                                     const SystemLayout& layout,
                                     const SystemLayout& target) {
  MultiIndex idx(layout.dims());
  MultiIndex tidx(target.dims());
  std::vector<int> src_pos(target.factor_count(), -1);
  std::vector<int> id_dims;
  std::vector<int> id_slots;
  for (int k = 0; k < target.factor_count(); ++k) {
    const auto& label = target.factor(k).label;
    if (layout.has_label(label)) {
      src_pos[k] = layout.index_of(label);
    } else {
      id_slots.push_back(k);
      id_dims.push_back(target.factor(k).dim);
    }
  }
  MultiIndex ididx(id_dims);
  std::vector<SparseEntry> out;
  out.reserve(in.size() * ididx.total());
  std::vector<int> rd(idx.rank()), cd(idx.rank()), td(ididx.rank());
  for (const auto& e : in) {
    idx.unflatten(e.r, rd);
    idx.unflatten(e.c, cd);
    for (int t = 0; t < ididx.total(); ++t) {
      ididx.unflatten(t, td);
      int rr = 0, cc = 0, ipos = 0;
      for (int k = 0; k < target.factor_count(); ++k) {
        int rdig, cdig;
        if (src_pos[k] >= 0) {
          rdig = rd[src_pos[k]];
          cdig = cd[src_pos[k]];
        } else {
          rdig = cdig = td[ipos++];
        }
        rr += rdig * tidx.stride(k);
        cc += cdig * tidx.stride(k);
      }
      out.push_back({rr, cc, e.v});
    }
  }
  return out;
}

std::vector<SparseEntry> apply_chain(std::vector<SparseEntry> entries,
                                     const SystemLayout& source,
                                     const std::vector<MapStep>& chain) {
  SystemLayout cur = source;
  for (const auto& step : chain) {
    switch (step.kind) {
      case MapStep::Kind::PartialTranspose:
        entries = apply_pt(entries, cur, step.labels);
        break;
      case MapStep::Kind::PartialTrace: {
        SystemLayout next = cur.without(step.labels);
        entries = apply_ptrace(entries, cur, step.labels, next);
        cur = next;
        break;
      }
      case MapStep::Kind::EmbedTensorIdentity:
        entries = apply_embed(entries, cur, step.target);
        cur = step.target;
        break;
    }
  }
  return entries;
}

// Embedded real entries of a complex sparse matrix, negated (G convention).
void append_embedded(std::vector<RealConeProgram::GEntry>& out,
                     const std::vector<SparseEntry>& entries, int d,
                     double coeff) {
  for (const auto& e : entries) {
    const double re = -coeff * e.v.real();
    const double im = -coeff * e.v.imag();
    if (re != 0.0) {
      out.push_back({e.r, e.c, re});
      out.push_back({e.r + d, e.c + d, re});
    }
    if (im != 0.0) {
      out.push_back({e.r, e.c + d, -im});
      out.push_back({e.r + d, e.c, im});
    }
  }
}

}  // namespace

int hvec_dim(int d) { return d * d; }

Eigen::VectorXd hvec(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::VectorXd out(hvec_dim(d));
  int pos = 0;
  for (int i = 0; i < d; ++i) out(pos++) = h(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      out(pos++) = kSqrt2 * h(i, j).real();
      out(pos++) = kSqrt2 * h(i, j).imag();
    }
  return out;
}

Matrix hvec_to_mat(const Eigen::VectorXd& coords, int d) {
  Matrix out = Matrix::Zero(d, d);
  int pos = 0;
  for (int i = 0; i < d; ++i) out(i, i) = coords(pos++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = coords(pos++) * kInvSqrt2;
      const double im = coords(pos++) * kInvSqrt2;
      out(i, j) = Complex(re, im);
      out(j, i) = Complex(re, -im);
    }
  return out;
}

int svec_dim(int d) { return d * (d + 1) / 2; }

Eigen::VectorXd svec(const Eigen::MatrixXd& s) {
  const int d = static_cast<int>(s.rows());
  Eigen::VectorXd out(svec_dim(d));
  int pos = 0;
  for (int i = 0; i < d; ++i) out(pos++) = s(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) out(pos++) = kSqrt2 * s(i, j);
  return out;
}

Eigen::MatrixXd svec_to_mat(const Eigen::VectorXd& coords, int d) {
  Eigen::MatrixXd out(d, d);
  int pos = 0;
  for (int i = 0; i < d; ++i) out(i, i) = coords(pos++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double v = coords(pos++) * kInvSqrt2;
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

Eigen::MatrixXd embed_real(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  Eigen::MatrixXd out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = h.real();
  out.bottomRightCorner(d, d) = h.real();
  out.topRightCorner(d, d) = -h.imag();
  out.bottomLeftCorner(d, d) = h.imag();
  return out;
}

Matrix unembed_real(const Eigen::MatrixXd& e) {
  const int d = static_cast<int>(e.rows()) / 2;
  Eigen::MatrixXd re =
      0.5 * (e.topLeftCorner(d, d) + e.bottomRightCorner(d, d));
  Eigen::MatrixXd im =
      0.5 * (e.bottomLeftCorner(d, d) - e.topRightCorner(d, d));
  Matrix out(d, d);
  out.real() = re;
  out.imag() = im;
  return out;
}

int RealConeProgram::cone_dim() const {
  int acc = 0;
  for (int d : block_dims) acc += svec_dim(d);
  return acc;
}

Eigen::MatrixXd RealConeProgram::dense_g() const {
  const int rows = cone_dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(rows, nvar);
  std::vector<int> offs(block_dims.size(), 0);
  for (size_t k = 1; k < block_dims.size(); ++k)
    offs[k] = offs[k - 1] + svec_dim(block_dims[k - 1]);
  for (int j = 0; j < nvar; ++j) {
    for (const auto& bc : gcols[j]) {
      const int d = block_dims[bc.block];
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      for (const auto& e : bc.entries) m(e.r, e.c) += e.v;
      g.block(offs[bc.block], j, svec_dim(d), 1) = svec(m);
    }
  }
  return g;
}

Eigen::VectorXd RealConeProgram::dense_h() const {
  Eigen::VectorXd h(cone_dim());
  int off = 0;
  for (size_t k = 0; k < block_dims.size(); ++k) {
    h.segment(off, svec_dim(block_dims[k])) = svec(hblocks[k]);
    off += svec_dim(block_dims[k]);
  }
  return h;
}

RealConeProgram embed_real(const SdpProblem& p) {
  RealConeProgram prog;
  prog.sense = p.sense();
  prog.c0 = p.objective_constant();

  // variable slots
  int offset = 0;
  for (const auto& v : p.variables()) {
    const int coords = hvec_dim(v.layout.total_dim());
    prog.slots.push_back({v.name, v.layout, offset, coords});
    offset += coords;
  }
  prog.nvar = offset;
  prog.gcols.resize(prog.nvar);
  prog.c = Eigen::VectorXd::Zero(prog.nvar);

  const double sgn = (p.sense() == Sense::Maximize) ? -1.0 : 1.0;
  for (const auto& term : p.objective_terms()) {
    const auto& slot = prog.slots[term.var];
    prog.c.segment(slot.offset, slot.coords) += sgn * hvec(term.coefficient);
  }

  // cone membership of PSD variables
  for (size_t vi = 0; vi < p.variables().size(); ++vi) {
    const auto& v = p.variables()[vi];
    if (v.cone != VarCone::HermitianPsd) continue;
    const int d = v.layout.total_dim();
    const int block = static_cast<int>(prog.block_dims.size());
    prog.block_dims.push_back(2 * d);
    prog.block_names.push_back(v.name + " >= 0");
    prog.hblocks.push_back(Eigen::MatrixXd::Zero(2 * d, 2 * d));
    const auto& slot = prog.slots[vi];
    for (int k = 0; k < slot.coords; ++k) {
      RealConeProgram::GBlockCol bc{block, {}};
      append_embedded(bc.entries, basis_sparse(d, k), d, 1.0);
      prog.gcols[slot.offset + k].push_back(std::move(bc));
    }
  }

  // constraints
  std::vector<Eigen::MatrixXd> arows_blocks;
  std::vector<Eigen::VectorXd> brows_blocks;
  int eq_rows = 0;

  for (const auto& con : p.constraints()) {
    const auto& e = con.expr;
    const int d = e.layout().total_dim();
    if (con.kind == SdpProblem::Constraint::Kind::PsdGeqZero) {
      const int block = static_cast<int>(prog.block_dims.size());
      prog.block_dims.push_back(2 * d);
      prog.block_names.push_back(con.name.empty() ? "psd constraint" : con.name);
      prog.hblocks.push_back(embed_real(e.constant_part()));
      for (const auto& term : e.terms()) {
        const auto& slot = prog.slots[term.var];
        for (int k = 0; k < slot.coords; ++k) {
          auto entries = apply_chain(
              basis_sparse(slot.layout.total_dim(), k), term.source, term.chain);
          if (entries.empty()) continue;
          RealConeProgram::GBlockCol bc{block, {}};
          append_embedded(bc.entries, entries, d, term.coeff);
          if (!bc.entries.empty())
            prog.gcols[slot.offset + k].push_back(std::move(bc));
        }
      }
    } else {
      // equality: hvec rows at the complex level
      const int rows = hvec_dim(d);
      Eigen::MatrixXd ablock = Eigen::MatrixXd::Zero(rows, prog.nvar);
      for (const auto& term : e.terms()) {
        const auto& slot = prog.slots[term.var];
        for (int k = 0; k < slot.coords; ++k) {
          auto entries = apply_chain(
              basis_sparse(slot.layout.total_dim(), k), term.source, term.chain);
          if (entries.empty()) continue;
          Matrix m = Matrix::Zero(d, d);
          for (const auto& en : entries) m(en.r, en.c) += term.coeff * en.v;
          ablock.col(slot.offset + k) += hvec(hermitize(m));
        }
      }
      arows_blocks.push_back(std::move(ablock));
      brows_blocks.push_back(-hvec(e.constant_part()));
      eq_rows += rows;
    }
  }

  prog.A = Eigen::MatrixXd::Zero(eq_rows, prog.nvar);
  prog.b = Eigen::VectorXd::Zero(eq_rows);
  int r = 0;
  for (size_t k = 0; k < arows_blocks.size(); ++k) {
    prog.A.middleRows(r, arows_blocks[k].rows()) = arows_blocks[k];
    prog.b.segment(r, brows_blocks[k].size()) = brows_blocks[k];
    r += static_cast<int>(arows_blocks[k].rows());
  }
  return prog;
}

void dump_cone_program(const RealConeProgram& prog, std::ostream& os) {
  os << "entmeter cone program v1\n";
  os << "variables " << prog.nvar << "\n";
  for (const auto& s : prog.slots)
    os << "slot " << s.name << " offset " << s.offset << " coords " << s.coords
       << " layout " << s.layout.to_string() << "\n";
  os << "sense " << (prog.sense == Sense::Minimize ? "min" : "max") << "\n";
  os << "c0 " << prog.c0 << "\n";
  os << "c " << prog.c.transpose() << "\n";
  os << "equalities " << prog.eq_rows() << "\n";
  for (int i = 0; i < prog.eq_rows(); ++i)
    os << "A " << prog.A.row(i) << " = " << prog.b(i) << "\n";
  os << "blocks " << prog.block_dims.size() << "\n";
  const Eigen::MatrixXd g = prog.dense_g();
  const Eigen::VectorXd h = prog.dense_h();
  int off = 0;
  for (size_t k = 0; k < prog.block_dims.size(); ++k) {
    const int len = svec_dim(prog.block_dims[k]);
    os << "block " << k << " dim " << prog.block_dims[k] << " name \""
       << prog.block_names[k] << "\"\n";
    for (int i = 0; i < len; ++i)
      os << "G " << g.row(off + i) << " ; h " << h(off + i) << "\n";
    off += len;
  }
}

}  // namespace entmeter::sdp
