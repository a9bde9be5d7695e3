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

#ifndef ENTMETER_LAYOUT_HPP
#define ENTMETER_LAYOUT_HPP

#include <string>
#include <vector>
#include <span>
#include <stdexcept>

namespace entmeter {

struct Factor {
  std::string label;
  int dim = 1;
};

/// Ordered tensor-factor structure of a Hilbert space, plus the set of
/// labels that sit on the transpose side of the bipartition ("b side").
///
/// The computational basis is fixed once and for all: basis vectors are
/// indexed row-major over the factors, leftmost factor most significant.
class SystemLayout {
 public:
  SystemLayout() = default;
  SystemLayout(std::vector<Factor> factors, std::vector<std::string> b_side = {});

  static SystemLayout single(const std::string& label, int dim,
                             bool on_b_side = false);
  /// 1-dimensional layout with no factors (scalars live here).
  static SystemLayout scalar();

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }

  bool has_label(const std::string& label) const;
  int index_of(const std::string& label) const;  // throws if absent
  int dim_of(const std::string& label) const;

  const std::vector<std::string>& b_side() const { return b_side_; }
  bool on_b_side(const std::string& label) const;
  SystemLayout with_b_side(std::vector<std::string> b_side) const;

  /// Layout with the listed factors removed (order of the rest preserved).
  SystemLayout without(std::span<const std::string> labels) const;
  /// This layout followed by `other`; label sets must be disjoint.
  SystemLayout concatenated(const SystemLayout& other) const;
  /// Factors reordered as given; must be a permutation of the labels.
  SystemLayout permuted(std::span<const std::string> order) const;

  std::vector<int> dims() const;
  std::string to_string() const;

  bool same_factors(const SystemLayout& other) const;

 private:
  std::vector<Factor> factors_;
  std::vector<std::string> b_side_;
  int total_dim_ = 1;

  void validate() const;
};

/// Row-major mixed-radix index arithmetic over a dims vector.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> dims);

  int total() const { return total_; }
  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_[k]; }
  int stride(int k) const { return strides_[k]; }

  int flatten(std::span<const int> digits) const;
  void unflatten(int flat, std::span<int> digits) const;
  int digit(int flat, int k) const { return (flat / strides_[k]) % dims_[k]; }

 private:
  std::vector<int> dims_;
  std::vector<int> strides_;
  int total_ = 1;
};

}  // namespace entmeter

#endif  // ENTMETER_LAYOUT_HPP
