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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "entmeter/cli.hpp"
#include "entmeter/harness.hpp"
#include "entmeter/io.hpp"

using namespace entmeter;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("entmeter_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("operator files round trip bit for bit") {
  DensityOperator rho = harness::random_state(
      SystemLayout({{"A", 2}, {"B", 3}}, {"B"}), 4, 17);
  std::ostringstream os;
  io::write_operator(os, rho.op());
  std::istringstream is(os.str());
  HermitianOperator back = io::read_operator(is);
  CHECK(back.layout().to_string() == rho.layout().to_string());
  CHECK((back.mat() - rho.mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channel files round trip bit for bit") {
  BipartiteChannel n = random_cpptp({2, 2, 2, 2}, 23);
  std::ostringstream os;
  io::write_channel(os, n);
  std::istringstream is(os.str());
  BipartiteChannel back = io::read_channel(is);
  CHECK(back.dims().in_a == 2);
  CHECK((back.choi().mat() - n.choi().mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed files are rejected") {
  auto expect_fail = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(io::read_operator(is), io::ParseError);
  };
  expect_fail("");                                   // empty
  expect_fail("dim A=2\n1 0 0 0\n0 0 1 0\n");        // bad header keyword
  expect_fail("dims: A=x ; bside:\n1 0\n");          // bad dimension
  expect_fail("dims: A=2 ; bside: B\n1 0 0 0\n");    // unknown bside label
  expect_fail("dims: A=2 ; bside:\n1 0\n0 0 1 0\n"); // short row
  expect_fail("dims: A=2 ; bside:\n1 0 0 0 9\n0 0 1 0\n");  // trailing entry
  expect_fail("dims: A=2 ; bside:\n1 0 0 1\n0 0 1 0\n");    // not Hermitian

  std::istringstream chan("in: A=2 ; out: A=2,B=2\n");
  CHECK_THROWS_AS(io::read_channel(chan), io::ParseError);
}

TEST_CASE("cli measures a Bell state from a file") {
  TempDir tmp;
  io::write_operator_file(tmp.file("bell.op"), maximally_entangled(2).op());
  std::string out;
  CHECK(run_cli({"measure", "en-state", tmp.file("bell.op")}, &out) ==
        cli::kExitOk);
  CHECK(out.find("value    1.000000") != std::string::npos);

  CHECK(run_cli({"measure", "kappa-state", tmp.file("bell.op")}, &out) ==
        cli::kExitOk);
  CHECK(out.find("value    1.000000") != std::string::npos);
}

TEST_CASE("cli json output carries the raw optimum") {
  TempDir tmp;
  io::write_operator_file(tmp.file("bell.op"), maximally_entangled(2).op());
  std::string out;
  CHECK(run_cli({"measure", "rmax-state", tmp.file("bell.op"), "--output",
                 "json"},
                &out) == cli::kExitOk);
  auto j = nlohmann::json::parse(out);
  CHECK(j["measure"] == "rmax-state");
  CHECK(std::abs(j["value_bits"].get<double>() - 1.0) < 1e-6);
  CHECK(std::abs(j["raw_optimum"].get<double>() - 2.0) < 1e-6);
  CHECK(j["status"] == "optimal");
}

TEST_CASE("cli measures a channel and the kappa value of the identity") {
  TempDir tmp;
  Vector u = unnormalized_max_ent(2);
  BipartiteChannel id2 = embed_point_to_point(Matrix(u * u.adjoint()), 2, 2);
  io::write_channel_file(tmp.file("identity2.chan"), id2);
  std::string out;
  CHECK(run_cli({"measure", "kappa-channel", tmp.file("identity2.chan")},
                &out) == cli::kExitOk);
  CHECK(out.find("value    1.000000") != std::string::npos);
}

TEST_CASE("cli divergence commands") {
  TempDir tmp;
  io::write_operator_file(tmp.file("bell.op"), maximally_entangled(2).op());
  DensityOperator pi(SystemLayout({{"A", 2}, {"B", 2}}, {"B"}),
                     Matrix(0.25 * Matrix::Identity(4, 4)));
  io::write_operator_file(tmp.file("pi.op"), pi.op());
  std::string out;
  CHECK(run_cli({"measure", "dmax", tmp.file("bell.op"), tmp.file("pi.op")},
                &out) == cli::kExitOk);
  CHECK(out.find("value    2.000000") != std::string::npos);
  CHECK(run_cli({"measure", "renyi", tmp.file("bell.op"), tmp.file("pi.op"),
                 "--alpha", "2"},
                &out) == cli::kExitOk);
  CHECK(out.find("value    2.000000") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  TempDir tmp;
  std::string out, err;
  // missing file -> input error with a diagnostic on the error stream
  CHECK(run_cli({"measure", "en-state", tmp.file("missing.op")}, &out, &err) ==
        cli::kExitInput);
  CHECK(!err.empty());

  CHECK(run_cli({"measure", "no-such-measure", tmp.file("missing.op")}, &out,
                &err) == cli::kExitInput);

  io::write_operator_file(tmp.file("bell.op"), maximally_entangled(2).op());
  CHECK(run_cli({"check", "ppt", tmp.file("bell.op")}) == cli::kExitNonMember);

  DensityOperator prod(
      SystemLayout({{"A", 2}, {"B", 2}}, {"B"}),
      Matrix(0.25 * Matrix::Identity(4, 4)));
  io::write_operator_file(tmp.file("prod.op"), prod.op());
  CHECK(run_cli({"check", "ppt", tmp.file("prod.op")}) == cli::kExitOk);

  BipartiteChannel dep = random_cpptp({2, 2, 2, 2}, 5);
  io::write_channel_file(tmp.file("dep.chan"), dep);
  CHECK(run_cli({"check", "cpptp", tmp.file("dep.chan")}) == cli::kExitOk);

  CHECK(run_cli({"verify", "no-such-suite", "--trials", "1"}, &out, &err) ==
        cli::kExitInput);
}

TEST_CASE("cli verify runs a suite and writes the report") {
  TempDir tmp;
  std::string out;
  const std::string report = tmp.file("report.txt");
  CHECK(run_cli({"verify", "operators", "--trials", "2", "--seed", "7",
                 "--report", report},
                &out) == cli::kExitOk);
  CHECK(out.find("PASS suite operators") != std::string::npos);
  std::ifstream f(report);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line.find("property") == 0);
}

TEST_CASE("cli ppt-prime check on a subnormalized Bell state") {
  TempDir tmp;
  DensityOperator phi = maximally_entangled(2);
  HermitianOperator half(phi.layout(), Matrix(0.5 * phi.mat()));
  io::write_operator_file(tmp.file("half.op"), half);
  CHECK(run_cli({"check", "ppt-prime", tmp.file("half.op")}) == cli::kExitOk);
  io::write_operator_file(tmp.file("full.op"), phi.op());
  CHECK(run_cli({"check", "ppt-prime", tmp.file("full.op")}) ==
        cli::kExitNonMember);
}
