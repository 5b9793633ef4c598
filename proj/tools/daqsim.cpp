// Copyright 2026 The daqsim Authors
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

// daqsim command-line runner.

#include <iostream>

#include "CLI11.hpp"
#include "daqsim/cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace daqsim::cli;
  CLI::App app{"Digital-analog quantum simulation batch runner"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out;
  std::size_t parallel = 1;
  bool quiet = false;

  struct Entry {
    Subcommand sub;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {Subcommand::simulate, "simulate", "time series of observables"},
      {Subcommand::trotter_scan, "trotter-scan", "digital error against Trotter steps"},
      {Subcommand::frame_compare, "frame-compare", "lab frame against the effective model"},
      {Subcommand::budget, "budget", "gate-count fidelity and duration estimate"},
  };
  std::optional<Subcommand> chosen;
  for (const auto& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    s->add_option("configs", configs, "config file(s)");
    s->add_option("--config", configs, "config file (repeatable)");
    s->add_option("--out", out, "output directory (overrides output.path)");
    s->add_option("--parallel", parallel, "independent configs run concurrently")->check(CLI::PositiveNumber);
    s->add_flag("--quiet", quiet, "no progress lines");
    s->callback([&chosen, sub = e.sub] { chosen = sub; });
  }
  bool listing = false;
  app.add_subcommand("list-protocols", "print registered protocol names")->callback([&] { listing = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (listing) {
    for (const auto& n : protocol_names()) std::cout << n << '\n';
    return kExitOk;
  }
  if (configs.empty()) {
    std::cerr << "config error: no config given\n";
    return kExitConfig;
  }
  return run_many(*chosen, configs, RunOptions{out, quiet}, parallel);
}
