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

#ifndef ENTMETER_SDP_PROBLEM_HPP
#define ENTMETER_SDP_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "entmeter/operators.hpp"

namespace entmeter::sdp {

enum class VarCone { HermitianPsd, HermitianFree };

struct VarHandle {
  int index = -1;
  bool valid() const { return index >= 0; }
};

/// One primitive linear map inside an expression term.  Chains of these are
/// applied left to right when the problem is lowered to matrix form.
struct MapStep {
  enum class Kind { PartialTranspose, PartialTrace, EmbedTensorIdentity };
  Kind kind;
  std::vector<std::string> labels;  // PartialTranspose / PartialTrace
  SystemLayout target;              // EmbedTensorIdentity
};

struct ExprTerm {
  int var = -1;
  double coeff = 1.0;
  std::vector<MapStep> chain;
  SystemLayout source;  // variable layout
  SystemLayout result;  // layout after the chain
};

/// Hermitian-operator-valued affine expression over problem variables:
/// sum_k coeff_k * Map_k(X_{v_k}) + constant.
class OperatorExpr {
 public:
  OperatorExpr(SystemLayout layout, Matrix constant, std::vector<ExprTerm> terms)
      : layout_(std::move(layout)),
        constant_(std::move(constant)),
        terms_(std::move(terms)) {}

  static OperatorExpr constant(const HermitianOperator& c) {
    return OperatorExpr(c.layout(), c.mat(), {});
  }
  static OperatorExpr zero(SystemLayout layout) {
    const int d = layout.total_dim();
    return OperatorExpr(std::move(layout), Matrix::Zero(d, d), {});
  }

  const SystemLayout& layout() const { return layout_; }
  const Matrix& constant_part() const { return constant_; }
  const std::vector<ExprTerm>& terms() const { return terms_; }

  OperatorExpr operator+(const OperatorExpr& other) const;
  OperatorExpr operator-(const OperatorExpr& other) const;
  OperatorExpr operator-() const;
  friend OperatorExpr operator*(double a, const OperatorExpr& e);
  OperatorExpr operator+(const HermitianOperator& c) const;
  OperatorExpr operator-(const HermitianOperator& c) const;

 private:
  SystemLayout layout_;
  Matrix constant_;
  std::vector<ExprTerm> terms_;
};

OperatorExpr pt(const OperatorExpr& e, std::vector<std::string> labels);
OperatorExpr ptrace(const OperatorExpr& e, std::vector<std::string> labels);
OperatorExpr embed(const OperatorExpr& e, const SystemLayout& target);

enum class Sense { Minimize, Maximize };

struct ObjectiveTerm {
  int var;
  Matrix coefficient;  // Hermitian, same layout as the variable
};

/// Hermitian-cone program: named matrix variables, PSD/equality constraints
/// built from partial transposes, partial traces, identity embeddings, sums
/// and scalings, and a real linear objective.
class SdpProblem {
 public:
  struct Variable {
    std::string name;
    SystemLayout layout;
    VarCone cone;
  };
  struct Constraint {
    enum class Kind { PsdGeqZero, EqZero };
    Kind kind;
    OperatorExpr expr;
    std::string name;
  };

  VarHandle add_variable(const std::string& name, SystemLayout layout,
                         VarCone cone);
  /// Scalar (1x1) variable; handy for epigraph reformulations.
  VarHandle add_scalar(const std::string& name);

  OperatorExpr expr(VarHandle v) const;

  void add_psd_constraint(OperatorExpr e, std::string name = "");
  void add_eq_constraint(OperatorExpr e, std::string name = "");

  void set_objective(Sense sense, std::vector<ObjectiveTerm> terms,
                     double constant = 0.0);
  /// minimize/maximize <C, X_v>
  void set_objective(Sense sense, VarHandle v, const Matrix& coefficient);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const std::vector<ObjectiveTerm>& objective_terms() const { return obj_; }
  double objective_constant() const { return obj_const_; }

  const Variable& variable(VarHandle v) const { return vars_.at(v.index); }

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> constraints_;
  std::vector<ObjectiveTerm> obj_;
  double obj_const_ = 0.0;
  Sense sense_ = Sense::Minimize;
};

/// Adds a scalar t with  expr <= t*I  (and  -t*I <= expr  unless the caller
/// knows expr is PSD by construction) so that minimizing t computes
/// ||expr||_inf.  Returns the handle of t.
VarHandle inf_norm_epigraph(SdpProblem& p, const OperatorExpr& expr,
                            bool psd_expr = false,
                            const std::string& name = "t");

}  // namespace entmeter::sdp

#endif  // ENTMETER_SDP_PROBLEM_HPP
