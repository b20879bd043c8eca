// Copyright 2026 The gossipcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// gossipcalc: command-line driver for the gossip computation experiments.
//
//   gossipcalc compute     --topology complete --n 64 --trials 200 --seed 1
//   gossipcalc spread      --topology grid --grid-d 2 --grid-c 4 --time-model sync
//   gossipcalc conductance --topology ring --n 4
//   gossipcalc sweep       --topology grid --sizes 64,256,1024 --time-model sync
//
// Options may also come from a flat key = value file given with --config;
// flags on the command line win.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gossipcalc/experiment.h"

namespace {

using gossipcalc::Error;
using gossipcalc::ErrorCode;

struct Flags {
  std::string topology = "complete";
  std::size_t n = 0;
  std::size_t grid_d = 2;
  std::size_t grid_c = 0;
  std::size_t degree = 4;
  std::uint64_t graph_seed = 1;
  std::string edge_list;
  std::string time_model = "async";
  std::string sync_semantics = "serialized";
  double epsilon = 0.2;
  double delta = 0.1;
  std::uint64_t r = 0;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  std::string capacity = "infinite";
  std::string minima_path = "spread";
  std::string f_kind = "constant-one";
  std::string inputs;
  std::string f_table;
  std::vector<std::size_t> sizes;
  std::string out;
  std::string csv;
  std::string trace;
  std::size_t enumeration_cap = gossipcalc::kDefaultEnumerationCap;
  double band = gossipcalc::kDefaultBandFactor;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
}

// Whitespace-separated rows of numbers; '#' starts a comment line.
std::vector<std::vector<double>> ParseNumberRows(const std::string& text,
                                                 const std::string& what,
                                                 std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    double value = 0.0;
    while (fields >> value) row.push_back(value);
    fields.clear();
    std::string rest;
    if ((fields >> rest) || row.size() != columns) {
      throw Error(ErrorCode::kParseError,
                  what + " line " + std::to_string(number) + ": expected " +
                      std::to_string(columns) + " number(s)");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

gossipcalc::ExperimentConfig ToConfig(gossipcalc::Command command,
                                      const Flags& flags, bool r_given) {
  gossipcalc::ExperimentConfig config;
  config.command = command;
  config.topology.kind = *gossipcalc::ParseTopologyKind(flags.topology);
  config.topology.n = flags.n;
  config.topology.grid_d = flags.grid_d;
  config.topology.grid_c = flags.grid_c;
  config.topology.degree = flags.degree;
  config.topology.graph_seed = flags.graph_seed;
  if (config.topology.kind == gossipcalc::TopologyKind::kFile) {
    if (flags.edge_list.empty()) {
      throw Error(ErrorCode::kInvalidParameter,
                  "--topology file requires --edge-list");
    }
    config.topology.edge_list_text = ReadFile(flags.edge_list);
  }
  config.time_model = *gossipcalc::ParseTimeModel(flags.time_model);
  config.sync_semantics = *gossipcalc::ParseSyncSemantics(flags.sync_semantics);
  config.epsilon = flags.epsilon;
  config.delta = flags.delta;
  if (r_given) config.r = flags.r;
  config.trials = flags.trials;
  config.seed = flags.seed;
  config.capacity = *gossipcalc::ParseCapacityMode(flags.capacity);
  config.minima_path = *gossipcalc::ParseMinimaPath(flags.minima_path);
  config.f_kind = *gossipcalc::ParseFunctionKind(flags.f_kind);
  if (!flags.inputs.empty()) {
    for (const auto& row : ParseNumberRows(ReadFile(flags.inputs), "inputs", 1)) {
      config.inputs.push_back(row[0]);
    }
  }
  if (!flags.f_table.empty()) {
    for (const auto& row : ParseNumberRows(ReadFile(flags.f_table), "f-table", 2)) {
      config.f_table[row[0]] = row[1];
    }
  }
  config.sizes = flags.sizes;
  config.trace = !flags.trace.empty();
  config.enumeration_cap = flags.enumeration_cap;
  config.band = flags.band;
  return config;
}

void AddOptions(CLI::App& app, Flags& flags) {
  app.add_option("--topology", flags.topology, "complete|grid|ring|path|expander|file")
      ->check(CLI::IsMember({"complete", "grid", "ring", "path", "expander", "file"}));
  app.add_option("--n", flags.n, "Node count");
  app.add_option("--grid-d,--grid_d", flags.grid_d, "Grid dimension d");
  app.add_option("--grid-c,--grid_c", flags.grid_c, "Grid side c");
  app.add_option("--degree", flags.degree, "Expander degree");
  app.add_option("--graph-seed,--graph_seed", flags.graph_seed, "Expander generator seed");
  app.add_option("--edge-list,--edge_list", flags.edge_list, "Edge-list file for --topology file");
  app.add_option("--time-model,--time_model", flags.time_model, "sync|async")
      ->check(CLI::IsMember({"sync", "async"}));
  app.add_option("--sync-semantics,--sync_semantics", flags.sync_semantics,
                 "serialized|snapshot")
      ->check(CLI::IsMember({"serialized", "snapshot"}));
  app.add_option("--epsilon", flags.epsilon, "Relative accuracy");
  app.add_option("--delta", flags.delta, "Failure probability");
  app.add_option("--r", flags.r, "Repetitions (default: from epsilon and delta)");
  app.add_option("--trials", flags.trials, "Number of trials");
  app.add_option("--seed", flags.seed, "Master seed");
  app.add_option("--capacity", flags.capacity, "infinite|unit")
      ->check(CLI::IsMember({"infinite", "unit"}));
  app.add_option("--minima-path,--minima_path", flags.minima_path, "oracle|spread")
      ->check(CLI::IsMember({"oracle", "spread"}));
  app.add_option("--f-kind,--f_kind", flags.f_kind, "identity|constant-one|user-table")
      ->check(CLI::IsMember({"identity", "constant-one", "user-table"}));
  app.add_option("--inputs", flags.inputs, "File with one raw input x_i per line");
  app.add_option("--f-table,--f_table", flags.f_table, "File of 'x y' rows mapping x_i to y_i");
  app.add_option("--sizes", flags.sizes, "Node counts for sweep")->delimiter(',');
  app.add_option("--out", flags.out, "Result JSON path (default: stdout)");
  app.add_option("--csv", flags.csv, "Metrics CSV path");
  app.add_option("--trace", flags.trace, "Per-event trace of trial 0 (spread)");
  app.add_option("--enumeration-cap,--enumeration_cap", flags.enumeration_cap,
                 "Largest n for exact conductance");
  app.add_option("--band", flags.band, "Multiplicative band for predictions");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gossip-based computation of separable functions"};
  app.set_config("--config", "", "Flat key = value configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  AddOptions(app, flags);
  auto* compute = app.add_subcommand("compute", "Estimate sum_i f_i(x_i) at every node");
  auto* spread = app.add_subcommand("spread", "Measure the information-spreading time");
  auto* conductance = app.add_subcommand("conductance", "Conductance and spectral gap");
  auto* sweep = app.add_subcommand("sweep", "Spreading-time scaling over --sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  gossipcalc::Command command = gossipcalc::Command::kCompute;
  if (spread->parsed()) command = gossipcalc::Command::kSpread;
  if (conductance->parsed()) command = gossipcalc::Command::kConductance;
  if (sweep->parsed()) command = gossipcalc::Command::kSweep;
  (void)compute;

  try {
    const auto config = ToConfig(command, flags, app.count("--r") > 0);
    const auto violations = gossipcalc::ValidateConfig(config);
    if (!violations.empty()) {
      for (const auto& v : violations) {
        std::cerr << "config error: " << v.field << ": " << v.message << '\n';
      }
      return 2;
    }
    const auto output = gossipcalc::RunExperiment(config);
    if (flags.out.empty()) {
      std::cout << output.json;
    } else {
      WriteFile(flags.out, output.json);
    }
    if (!flags.csv.empty() && !output.csv.empty()) WriteFile(flags.csv, output.csv);
    if (!flags.trace.empty()) WriteFile(flags.trace, output.trace);
  } catch (const Error& e) {
    std::cerr << "gossipcalc: " << gossipcalc::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return gossipcalc::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gossipcalc: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
