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

#ifndef ENTMETER_IO_HPP
#define ENTMETER_IO_HPP

#include <iosfwd>
#include <string>

#include "entmeter/channels.hpp"

namespace entmeter::io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operator files: one header line
//   dims: label=dim,label=dim,... ; bside: label,label
// followed by one matrix row per line, entries as whitespace-separated
// "re imag" pairs in row-major order.
HermitianOperator read_operator(std::istream& is);
void write_operator(std::ostream& os, const HermitianOperator& op);

// Channel files: one header line
//   in: label=dim,label=dim ; out: label=dim,label=dim
// followed by the Choi matrix in (S_A, A, B, S_B) order, same entry format.
BipartiteChannel read_channel(std::istream& is);
void write_channel(std::ostream& os, const BipartiteChannel& n);

HermitianOperator read_operator_file(const std::string& path);
BipartiteChannel read_channel_file(const std::string& path);
void write_operator_file(const std::string& path, const HermitianOperator& op);
void write_channel_file(const std::string& path, const BipartiteChannel& n);

}  // namespace entmeter::io

#endif  // ENTMETER_IO_HPP
