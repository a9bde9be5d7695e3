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

#include "entmeter/layout.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace entmeter {

SystemLayout::SystemLayout(std::vector<Factor> factors,
                           std::vector<std::string> b_side)
    : factors_(std::move(factors)), b_side_(std::move(b_side)) {
  total_dim_ = 1;
  for (const auto& f : factors_) total_dim_ *= f.dim;
  validate();
}

SystemLayout SystemLayout::single(const std::string& label, int dim,
                                  bool on_b_side) {
  std::vector<std::string> b;
  if (on_b_side) b.push_back(label);
  return SystemLayout({{label, dim}}, std::move(b));
}

SystemLayout SystemLayout::scalar() { return SystemLayout({}, {}); }

void SystemLayout::validate() const {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1)
      throw std::invalid_argument("layout: factor '" + f.label +
                                  "' has dimension < 1");
    if (!seen.insert(f.label).second)
      throw std::invalid_argument("layout: duplicate label '" + f.label + "'");
  }
  for (const auto& l : b_side_) {
    if (!seen.count(l))
      throw std::invalid_argument("layout: b-side label '" + l +
                                  "' is not a factor");
  }
}

bool SystemLayout::has_label(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

int SystemLayout::index_of(const std::string& label) const {
  for (int i = 0; i < factor_count(); ++i)
    if (factors_[i].label == label) return i;
  throw std::invalid_argument("layout: unknown label '" + label + "'");
}

int SystemLayout::dim_of(const std::string& label) const {
  return factors_[index_of(label)].dim;
}

bool SystemLayout::on_b_side(const std::string& label) const {
  return std::find(b_side_.begin(), b_side_.end(), label) != b_side_.end();
}

SystemLayout SystemLayout::with_b_side(std::vector<std::string> b_side) const {
  return SystemLayout(factors_, std::move(b_side));
}

SystemLayout SystemLayout::without(std::span<const std::string> labels) const {
  for (const auto& l : labels) (void)index_of(l);
  std::vector<Factor> kept;
  std::vector<std::string> b;
  for (const auto& f : factors_) {
    if (std::find(labels.begin(), labels.end(), f.label) == labels.end()) {
      kept.push_back(f);
      if (on_b_side(f.label)) b.push_back(f.label);
    }
  }
  return SystemLayout(std::move(kept), std::move(b));
}

SystemLayout SystemLayout::concatenated(const SystemLayout& other) const {
  std::vector<Factor> all = factors_;
  for (const auto& f : other.factors()) {
    if (has_label(f.label))
      throw std::invalid_argument("layout: label collision on '" + f.label +
                                  "'");
    all.push_back(f);
  }
  std::vector<std::string> b = b_side_;
  b.insert(b.end(), other.b_side_.begin(), other.b_side_.end());
  return SystemLayout(std::move(all), std::move(b));
}

SystemLayout SystemLayout::permuted(std::span<const std::string> order) const {
  if (static_cast<int>(order.size()) != factor_count())
    throw std::invalid_argument("layout: permutation has wrong length");
  std::vector<Factor> out;
  for (const auto& l : order) out.push_back(factors_[index_of(l)]);
  SystemLayout res(std::move(out), b_side_);
  return res;
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < factor_count(); ++i) {
    if (i) os << ",";
    os << factors_[i].label << "=" << factors_[i].dim;
  }
  os << " ; bside:";
  for (size_t i = 0; i < b_side_.size(); ++i) {
    os << (i ? "," : " ") << b_side_[i];
  }
  return os.str();
}

bool SystemLayout::same_factors(const SystemLayout& other) const {
  if (factor_count() != other.factor_count()) return false;
  for (int i = 0; i < factor_count(); ++i) {
    if (factors_[i].label != other.factors_[i].label ||
        factors_[i].dim != other.factors_[i].dim)
      return false;
  }
  return true;
}

MultiIndex::MultiIndex(std::vector<int> dims) : dims_(std::move(dims)) {
  strides_.assign(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * dims_[k + 1];
  total_ = dims_.empty() ? 1 : strides_[0] * dims_[0];
}

int MultiIndex::flatten(std::span<const int> digits) const {
  int flat = 0;
  for (size_t k = 0; k < dims_.size(); ++k) flat += digits[k] * strides_[k];
  return flat;
}

void MultiIndex::unflatten(int flat, std::span<int> digits) const {
  for (size_t k = 0; k < dims_.size(); ++k) {
    digits[k] = (flat / strides_[k]) % dims_[k];
  }
}

}  // namespace entmeter
