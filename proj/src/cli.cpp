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

#include "entmeter/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>

#include "entmeter/divergences.hpp"
#include "entmeter/harness.hpp"
#include "entmeter/io.hpp"

namespace entmeter::cli {

namespace {

using nlohmann::json;

struct CommonFlags {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  double rank_tol = 1e-8;
  std::string output = "table";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--gap-tol", flags.gap_tol, "duality gap tolerance");
  cmd->add_option("--feas-tol", flags.feas_tol, "feasibility tolerance");
  cmd->add_option("--max-iter", flags.max_iter, "iteration cap");
  cmd->add_option("--rank-tol", flags.rank_tol, "support rank cutoff");
  cmd->add_option("--output", flags.output, "table|json")
      ->check(CLI::IsMember({"table", "json"}));
}

MeasureOptions measure_options(const CommonFlags& f) {
  MeasureOptions m;
  m.solver.gap_tol = f.gap_tol;
  m.solver.feas_tol = f.feas_tol;
  m.solver.max_iter = f.max_iter;
  m.rank_tol = f.rank_tol;
  return m;
}

DensityOperator load_state(const std::string& path) {
  HermitianOperator op = io::read_operator_file(path);
  if (op.layout().b_side().empty())
    throw io::ParseError(path + ": state file needs a nonempty bside");
  return DensityOperator(op);
}

void print_report(const MeasureReport& rep, const CommonFlags& flags,
                  std::ostream& out) {
  if (flags.output == "json") {
    json j;
    j["measure"] = rep.measure_name;
    j["value_bits"] = rep.value;
    j["raw_optimum"] = rep.primal_value;
    j["primal"] = rep.primal_value;
    j["dual"] = rep.dual_value;
    j["gap"] = rep.gap;
    j["status"] = sdp::to_string(rep.status);
    j["iterations"] = rep.iterations;
    if (rep.numerical_rank >= 0) j["numerical_rank"] = rep.numerical_rank;
    if (rep.lower_bound_only) j["lower_bound_only"] = true;
    out << j.dump(2) << "\n";
    return;
  }
  out << std::fixed << std::setprecision(6);
  out << "measure  " << rep.measure_name << "\n";
  out << "value    " << rep.value << "\n";
  out << std::setprecision(9);
  out << "primal   " << rep.primal_value << "\n";
  out << "dual     " << rep.dual_value << "\n";
  out << "gap      " << rep.gap << "\n";
  out << "status   " << sdp::to_string(rep.status) << " ("
      << rep.iterations << " iterations)\n";
  if (rep.numerical_rank >= 0)
    out << "rank     " << rep.numerical_rank << "\n";
  if (rep.lower_bound_only) out << "note     value is a lower bound\n";
}

void print_divergence(const std::string& name, const DivergenceValue& v,
                      const CommonFlags& flags, std::ostream& out) {
  if (flags.output == "json") {
    json j;
    j["measure"] = name;
    j["value_bits"] = v.is_infinite() ? "inf" : json(v.value);
    j["support_violation"] = v.support_violation;
    out << j.dump(2) << "\n";
    return;
  }
  out << "measure  " << name << "\n";
  if (v.is_infinite())
    out << "value    inf (support violation)\n";
  else
    out << "value    " << std::fixed << std::setprecision(6) << v.value
        << "\n";
}

int cmd_measure(const std::string& name, const std::string& input,
                const std::string& second, double alpha, int samples,
                int restarts, std::uint64_t seed, const CommonFlags& flags,
                std::ostream& out) {
  MeasureOptions mo = measure_options(flags);
  MeasureReport rep;
  if (name == "en-state") {
    rep = log_negativity_state(load_state(input), mo);
  } else if (name == "rmax-state") {
    rep = max_rains_state(load_state(input), mo);
  } else if (name == "kappa-state") {
    rep = kappa_entanglement_state(load_state(input), mo);
  } else if (name == "emin-state") {
    rep = min_rains_state(load_state(input), mo);
  } else if (name == "w0-state") {
    rep = one_shot_exact_distillable(load_state(input), mo);
  } else if (name == "en-channel") {
    rep = log_negativity_channel(io::read_channel_file(input), mo);
  } else if (name == "rmax-channel") {
    rep = max_rains_channel(io::read_channel_file(input), mo);
  } else if (name == "kappa-channel") {
    rep = kappa_entanglement_channel(io::read_channel_file(input), mo);
  } else if (name == "emin-channel-lb") {
    BipartiteChannel n = io::read_channel_file(input);
    if (n.dims().in_b != 1 || n.dims().out_a != 1)
      throw io::ParseError(
          "emin-channel-lb needs a point-to-point channel (in B=1, out A=1)");
    rep = min_rains_channel_lower(n.choi().mat(), n.dims().in_a,
                                  n.dims().out_b, samples, restarts, seed, mo);
  } else if (name == "dmax" || name == "renyi") {
    if (second.empty())
      throw io::ParseError(name + " needs two operator files");
    DensityOperator rho = load_state(input);
    HermitianOperator sigma = io::read_operator_file(second);
    DivergenceValue v = (name == "dmax")
                            ? max_relative_entropy(rho, sigma, flags.rank_tol)
                            : sandwiched_renyi(rho, sigma, alpha, flags.rank_tol);
    print_divergence(name, v, flags, out);
    return kExitOk;
  } else {
    throw io::ParseError("unknown measure '" + name + "'");
  }
  print_report(rep, flags, out);
  return kExitOk;
}

int cmd_check(const std::string& kind, const std::string& input, double tol,
              std::ostream& out) {
  bool member = false;
  if (kind == "ppt") {
    member = is_ppt(load_state(input), tol);
  } else if (kind == "ppt-prime") {
    HermitianOperator op = io::read_operator_file(input);
    if (op.layout().b_side().empty())
      throw io::ParseError(input + ": needs a nonempty bside");
    member = is_ppt_prime(op, tol);
  } else if (kind == "cpptp") {
    member = is_cpptp(io::read_channel_file(input), tol);
  } else {
    throw io::ParseError("unknown membership check '" + kind + "'");
  }
  out << kind << ": " << (member ? "member" : "non-member") << "\n";
  return member ? kExitOk : kExitNonMember;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials,
               double slack, const std::string& report_path,
               const CommonFlags& flags, std::ostream& out) {
  harness::SuiteConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.slack = slack;
  cfg.solver.gap_tol = flags.gap_tol;
  cfg.solver.feas_tol = flags.feas_tol;
  cfg.solver.max_iter = flags.max_iter;
  harness::SuiteReport rep = harness::run_suite(suite, cfg);
  rep.write(out);
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw io::ParseError("cannot write '" + report_path + "'");
    rep.write(f);
  }
  out << (rep.total_failures() == 0 ? "PASS" : "FAIL") << " suite " << suite
      << " (" << rep.total_failures() << " failures)\n";
  return rep.total_failures() == 0 ? kExitOk : kExitNonMember;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"entanglement measures of bipartite states and channels"};
  app.require_subcommand(1);

  // measure
  std::string m_name, m_input, m_second;
  double m_alpha = 2.0;
  int m_samples = 16, m_restarts = 16;
  std::uint64_t m_seed = 0;
  CommonFlags m_flags;
  CLI::App* measure = app.add_subcommand("measure", "compute a measure");
  measure->add_option("name", m_name, "measure name")->required();
  measure->add_option("input", m_input, "operator or channel file")->required();
  measure->add_option("second", m_second, "second operator file (dmax/renyi)");
  measure->add_option("--alpha", m_alpha, "Renyi order");
  measure->add_option("--samples", m_samples, "input samples (lower bounds)");
  measure->add_option("--restarts", m_restarts, "hill-climb rounds");
  measure->add_option("--seed", m_seed, "sampling seed");
  add_common(measure, m_flags);

  // check
  std::string c_kind, c_input;
  double c_tol = 1e-9;
  CLI::App* check = app.add_subcommand("check", "membership checks");
  check->add_option("kind", c_kind, "ppt|ppt-prime|cpptp")->required();
  check->add_option("input", c_input, "operator or channel file")->required();
  check->add_option("--tol", c_tol, "membership tolerance");

  // verify
  std::string v_suite, v_report;
  std::uint64_t v_seed = 1;
  int v_trials = 10;
  double v_slack = 1e-5;
  CommonFlags v_flags;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", v_suite, "suite name or 'all'")->required();
  verify->add_option("--seed", v_seed, "suite seed");
  verify->add_option("--trials", v_trials, "trials per property");
  verify->add_option("--slack", v_slack, "inequality slack");
  verify->add_option("--report", v_report, "report file path");
  add_common(verify, v_flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (measure->parsed())
      return cmd_measure(m_name, m_input, m_second, m_alpha, m_samples,
                         m_restarts, m_seed, m_flags, out);
    if (check->parsed()) {
      if (c_kind == "cpptp" && !check->count("--tol")) c_tol = 1e-8;
      return cmd_check(c_kind, c_input, c_tol, out);
    }
    if (verify->parsed())
      return cmd_verify(v_suite, v_seed, v_trials, v_slack, v_report, v_flags,
                        out);
  } catch (const sdp::SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace entmeter::cli
