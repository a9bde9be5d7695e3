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

#include "entmeter/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace entmeter::io {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(strip(item));
  return out;
}

// "label=dim,label=dim" -> factor list
std::vector<Factor> parse_factors(const std::string& text,
                                  const char* context) {
  std::vector<Factor> out;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError(std::string(context) + ": expected label=dim, got '" +
                       item + "'");
    const std::string label = strip(item.substr(0, eq));
    const std::string dim_text = strip(item.substr(eq + 1));
    char* end = nullptr;
    const long dim = std::strtol(dim_text.c_str(), &end, 10);
    if (label.empty() || end == dim_text.c_str() || *end != '\0' || dim < 1)
      throw ParseError(std::string(context) + ": bad factor '" + item + "'");
    out.push_back({label, static_cast<int>(dim)});
  }
  if (out.empty())
    throw ParseError(std::string(context) + ": no factors given");
  return out;
}

Matrix read_matrix(std::istream& is, int dim) {
  Matrix m(dim, dim);
  std::string line;
  int row = 0;
  while (row < dim) {
    if (!std::getline(is, line))
      throw ParseError("matrix: expected " + std::to_string(dim) +
                       " rows, got " + std::to_string(row));
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    for (int col = 0; col < dim; ++col) {
      double re, im;
      if (!(ls >> re >> im))
        throw ParseError("matrix: row " + std::to_string(row) +
                         " has fewer than " + std::to_string(dim) +
                         " complex entries");
      m(row, col) = Complex(re, im);
    }
    double extra;
    if (ls >> extra)
      throw ParseError("matrix: row " + std::to_string(row) +
                       " has trailing entries");
    ++row;
  }
  return m;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << std::setprecision(17);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << "  ";
      os << m(r, c).real() << " " << m(r, c).imag();
    }
    os << "\n";
  }
}

std::string header_line(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    line = strip(line);
    if (!line.empty()) return line;
  }
  throw ParseError("empty input");
}

}  // namespace

HermitianOperator read_operator(std::istream& is) {
  std::string header = header_line(is);
  if (header.rfind("dims:", 0) != 0)
    throw ParseError("operator header must start with 'dims:'");
  const auto semi = header.find(';');
  std::string dims_part = header.substr(5, semi == std::string::npos
                                               ? std::string::npos
                                               : semi - 5);
  std::vector<std::string> bside;
  if (semi != std::string::npos) {
    std::string rest = strip(header.substr(semi + 1));
    if (rest.rfind("bside:", 0) != 0)
      throw ParseError("operator header: expected 'bside:' after ';'");
    for (const auto& l : split(rest.substr(6), ','))
      if (!l.empty()) bside.push_back(l);
  }
  try {
    SystemLayout layout(parse_factors(strip(dims_part), "dims"), bside);
    Matrix m = read_matrix(is, layout.total_dim());
    return HermitianOperator(layout, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_operator(std::ostream& os, const HermitianOperator& op) {
  os << "dims: ";
  for (int i = 0; i < op.layout().factor_count(); ++i) {
    if (i) os << ",";
    os << op.layout().factor(i).label << "=" << op.layout().factor(i).dim;
  }
  os << " ; bside: ";
  for (size_t i = 0; i < op.layout().b_side().size(); ++i) {
    if (i) os << ",";
    os << op.layout().b_side()[i];
  }
  os << "\n";
  write_matrix(os, op.mat());
}

BipartiteChannel read_channel(std::istream& is) {
  std::string header = header_line(is);
  if (header.rfind("in:", 0) != 0)
    throw ParseError("channel header must start with 'in:'");
  const auto semi = header.find(';');
  if (semi == std::string::npos)
    throw ParseError("channel header: missing '; out:' part");
  std::string in_part = strip(header.substr(3, semi - 3));
  std::string rest = strip(header.substr(semi + 1));
  if (rest.rfind("out:", 0) != 0)
    throw ParseError("channel header: expected 'out:' after ';'");
  std::vector<Factor> ins = parse_factors(in_part, "in");
  std::vector<Factor> outs = parse_factors(strip(rest.substr(4)), "out");
  if (ins.size() != 2 || outs.size() != 2)
    throw ParseError("channel header: need exactly two in and two out factors");
  ChannelDims d{ins[0].dim, ins[1].dim, outs[0].dim, outs[1].dim};
  Matrix m = read_matrix(is, d.in_a * d.in_b * d.out_a * d.out_b);
  try {
    return BipartiteChannel(HermitianOperator(CPMap::choi_layout(d), std::move(m)),
                            d);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void write_channel(std::ostream& os, const BipartiteChannel& n) {
  os << "in: A=" << n.dims().in_a << ",B=" << n.dims().in_b
     << " ; out: A=" << n.dims().out_a << ",B=" << n.dims().out_b << "\n";
  write_matrix(os, n.choi().mat());
}

namespace {
std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return f;
}
}  // namespace

HermitianOperator read_operator_file(const std::string& path) {
  auto f = open_input(path);
  return read_operator(f);
}

BipartiteChannel read_channel_file(const std::string& path) {
  auto f = open_input(path);
  return read_channel(f);
}

void write_operator_file(const std::string& path, const HermitianOperator& op) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  write_operator(f, op);
}

void write_channel_file(const std::string& path, const BipartiteChannel& n) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  write_channel(f, n);
}

}  // namespace entmeter::io
