// Copyright 2026 The qmg Authors
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

// qmg: confusability graphs and multigraphs of quantum channels, quantum
// multi-relations and CP-map synthesis, from the command line.
//
// Exit codes: 0 success (including negative verdicts like cp=false),
// 1 self-test failure, 2 input or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qmg/commands.hpp"

namespace {

struct Options {
  std::string input_path;
  std::string output_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::vector<std::string> tol_overrides;
};

qmg::Tolerances resolve_tolerances(const Options& opt) {
  std::map<std::string, double> values;
  for (const auto& item : opt.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw qmg::ArgumentError("--tol expects NAME=VALUE, got: " + item);
    values[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return qmg::Tolerances{}.with_overrides(values);
}

nlohmann::json load_input(const Options& opt) {
  if (opt.input_path.empty())
    throw qmg::ArgumentError("missing --input PATH");
  std::ifstream stream(opt.input_path);
  if (!stream)
    throw qmg::ArgumentError("cannot open input file: " + opt.input_path);
  nlohmann::json j;
  try {
    stream >> j;
  } catch (const nlohmann::json::exception& e) {
    throw qmg::ArgumentError(std::string("input is not valid JSON: ") +
                             e.what());
  }
  return j;
}

void emit(const Options& opt, const std::string& payload) {
  std::string body = payload;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (opt.output_path.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream out(opt.output_path, std::ios::binary);
  if (!out)
    throw qmg::ArgumentError("cannot open output file: " + opt.output_path);
  out << body;
}

void add_common(CLI::App* cmd, Options& opt, bool needs_input = true) {
  auto* in = cmd->add_option("--input", opt.input_path, "input JSON file");
  if (needs_input) in->required();
  cmd->add_option("--output", opt.output_path,
                  "write the report here instead of stdout");
  cmd->add_option("--seed", opt.seed, "seed for randomized fixtures");
  cmd->add_option("--tol", opt.tol_overrides,
                  "tolerance override NAME=VALUE (repeatable)");
  cmd->add_option("--format", opt.format, "output format: json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "confusability multigraphs of quantum channels and quantum "
      "multi-relations"};
  app.require_subcommand(1);
  Options opt;

  auto* check_cp = app.add_subcommand(
      "check-cp", "complete positivity and trace preservation of a channel");
  add_common(check_cp, opt);
  auto* multigraph = app.add_subcommand(
      "multigraph",
      "confusability multigraph of a channel, with the counting check");
  add_common(multigraph, opt);
  auto* classical = app.add_subcommand(
      "classical",
      "classical confusability multigraph of a transition matrix");
  add_common(classical, opt);
  auto* relation =
      app.add_subcommand("relation", "verify or analyze a multi-relation");
  relation->require_subcommand(1);
  auto* relation_check =
      relation->add_subcommand("check", "verify the multi-relation axioms");
  add_common(relation_check, opt);
  auto* relation_indicator = relation->add_subcommand(
      "indicator", "edge indicators and their spectra");
  add_common(relation_indicator, opt);
  auto* relation_adjacency = relation->add_subcommand(
      "adjacency", "adjacency operators with CP and Schur flags");
  add_common(relation_adjacency, opt);
  auto* decompose = app.add_subcommand(
      "decompose", "factor a multi-relation into sigma components");
  add_common(decompose, opt);
  auto* synthesize = app.add_subcommand(
      "synthesize",
      "synthesize a CP map realizing a symmetric decomposable relation");
  add_common(synthesize, opt);
  auto* roundtrip = app.add_subcommand(
      "roundtrip", "synthesize and compare the resulting multigraph");
  add_common(roundtrip, opt);
  auto* selftest = app.add_subcommand(
      "selftest", "run the seeded invariant campaign over every module");
  add_common(selftest, opt, /*needs_input=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto tol = resolve_tolerances(opt);
    qmg::CommandResult result;
    if (check_cp->parsed()) {
      result = qmg::cmd_check_cp(load_input(opt), tol);
    } else if (multigraph->parsed()) {
      result = qmg::cmd_multigraph(load_input(opt), tol);
    } else if (classical->parsed()) {
      result = qmg::cmd_classical(load_input(opt), opt.format, tol);
    } else if (relation->parsed()) {
      if (relation_check->parsed())
        result = qmg::cmd_relation_check(load_input(opt), tol);
      else if (relation_indicator->parsed())
        result = qmg::cmd_relation_indicator(load_input(opt), tol);
      else
        result = qmg::cmd_relation_adjacency(load_input(opt), tol);
    } else if (decompose->parsed()) {
      result = qmg::cmd_decompose(load_input(opt), tol);
    } else if (synthesize->parsed()) {
      result = qmg::cmd_synthesize(load_input(opt), tol);
    } else if (roundtrip->parsed()) {
      result = qmg::cmd_roundtrip(load_input(opt), tol);
    } else if (selftest->parsed()) {
      std::string timings;
      result = qmg::cmd_selftest(opt.seed, tol, &timings);
      std::fputs(timings.c_str(), stderr);
    }
    emit(opt, result.output);
    return result.exit_code;
  } catch (const qmg::Error& e) {
    std::fprintf(stderr, "{\"error\":%s}\n", qmg::jstr(e.what()).c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":%s}\n", qmg::jstr(e.what()).c_str());
    return 2;
  }
}
