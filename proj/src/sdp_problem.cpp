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

#include "entmeter/sdp/problem.hpp"

namespace entmeter::sdp {

namespace {

void require_same_factors(const SystemLayout& a, const SystemLayout& b,
                          const char* what) {
  if (!a.same_factors(b))
    throw std::invalid_argument(std::string(what) + ": layout mismatch (" +
                                a.to_string() + " vs " + b.to_string() + ")");
}

SystemLayout step_result(const SystemLayout& in, const MapStep& step) {
  switch (step.kind) {
    case MapStep::Kind::PartialTranspose:
      for (const auto& l : step.labels) (void)in.index_of(l);
      return in;
    case MapStep::Kind::PartialTrace:
      return in.without(step.labels);
    case MapStep::Kind::EmbedTensorIdentity:
      for (const auto& f : in.factors()) {
        if (!step.target.has_label(f.label) ||
            step.target.dim_of(f.label) != f.dim)
          throw std::invalid_argument("embed: target incompatible with '" +
                                      f.label + "'");
      }
      return step.target;
  }
  throw std::logic_error("unreachable");
}

Matrix apply_step_dense(const Matrix& m, const SystemLayout& in,
                        const MapStep& step) {
  HermitianOperator op(in, m);
  switch (step.kind) {
    case MapStep::Kind::PartialTranspose:
      return partial_transpose(op, std::span<const std::string>(step.labels))
          .mat();
    case MapStep::Kind::PartialTrace:
      return partial_trace(op, std::span<const std::string>(step.labels)).mat();
    case MapStep::Kind::EmbedTensorIdentity:
      return embed_tensor_identity(op, step.target).mat();
  }
  throw std::logic_error("unreachable");
}

OperatorExpr mapped(const OperatorExpr& e, MapStep step) {
  SystemLayout out = step_result(e.layout(), step);
  Matrix c = apply_step_dense(e.constant_part(), e.layout(), step);
  std::vector<ExprTerm> terms = e.terms();
  for (auto& t : terms) {
    t.chain.push_back(step);
    t.result = out;
  }
  return OperatorExpr(std::move(out), std::move(c), std::move(terms));
}

}  // namespace

OperatorExpr OperatorExpr::operator+(const OperatorExpr& other) const {
  require_same_factors(layout_, other.layout_, "expr sum");
  std::vector<ExprTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return OperatorExpr(layout_, constant_ + other.constant_, std::move(terms));
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& other) const {
  return *this + (-other);
}

OperatorExpr OperatorExpr::operator-() const { return -1.0 * (*this); }

OperatorExpr operator*(double a, const OperatorExpr& e) {
  std::vector<ExprTerm> terms = e.terms_;
  for (auto& t : terms) t.coeff *= a;
  return OperatorExpr(e.layout_, a * e.constant_, std::move(terms));
}

OperatorExpr OperatorExpr::operator+(const HermitianOperator& c) const {
  require_same_factors(layout_, c.layout(), "expr plus constant");
  return OperatorExpr(layout_, constant_ + c.mat(), terms_);
}

OperatorExpr OperatorExpr::operator-(const HermitianOperator& c) const {
  require_same_factors(layout_, c.layout(), "expr minus constant");
  return OperatorExpr(layout_, constant_ - c.mat(), terms_);
}

OperatorExpr pt(const OperatorExpr& e, std::vector<std::string> labels) {
  return mapped(e, {MapStep::Kind::PartialTranspose, std::move(labels), {}});
}

OperatorExpr ptrace(const OperatorExpr& e, std::vector<std::string> labels) {
  return mapped(e, {MapStep::Kind::PartialTrace, std::move(labels), {}});
}

OperatorExpr embed(const OperatorExpr& e, const SystemLayout& target) {
  return mapped(e, {MapStep::Kind::EmbedTensorIdentity, {}, target});
}

VarHandle SdpProblem::add_variable(const std::string& name, SystemLayout layout,
                                   VarCone cone) {
  vars_.push_back({name, std::move(layout), cone});
  return {static_cast<int>(vars_.size()) - 1};
}

VarHandle SdpProblem::add_scalar(const std::string& name) {
  return add_variable(name, SystemLayout::scalar(), VarCone::HermitianFree);
}

OperatorExpr SdpProblem::expr(VarHandle v) const {
  const Variable& var = vars_.at(v.index);
  const int d = var.layout.total_dim();
  ExprTerm t{v.index, 1.0, {}, var.layout, var.layout};
  return OperatorExpr(var.layout, Matrix::Zero(d, d), {t});
}

void SdpProblem::add_psd_constraint(OperatorExpr e, std::string name) {
  constraints_.push_back(
      {Constraint::Kind::PsdGeqZero, std::move(e), std::move(name)});
}

void SdpProblem::add_eq_constraint(OperatorExpr e, std::string name) {
  constraints_.push_back(
      {Constraint::Kind::EqZero, std::move(e), std::move(name)});
}

void SdpProblem::set_objective(Sense sense, std::vector<ObjectiveTerm> terms,
                               double constant) {
  for (const auto& t : terms) {
    const Variable& var = vars_.at(t.var);
    if (t.coefficient.rows() != var.layout.total_dim())
      throw std::invalid_argument("objective: coefficient size mismatch for '" +
                                  var.name + "'");
  }
  sense_ = sense;
  obj_ = std::move(terms);
  obj_const_ = constant;
}

void SdpProblem::set_objective(Sense sense, VarHandle v,
                               const Matrix& coefficient) {
  set_objective(sense, {{v.index, coefficient}}, 0.0);
}

VarHandle inf_norm_epigraph(SdpProblem& p, const OperatorExpr& expr,
                            bool psd_expr, const std::string& name) {
  VarHandle t = p.add_scalar(name);
  OperatorExpr t_id = embed(p.expr(t), expr.layout());
  p.add_psd_constraint(t_id - expr, name + " upper");
  if (!psd_expr) p.add_psd_constraint(t_id + expr, name + " lower");
  return t;
}

}  // namespace entmeter::sdp
