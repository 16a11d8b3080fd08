// Copyright 2026 The Haraux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include "CLI/CLI.hpp"
#endif
#include "haraux_cli/cli.h"

int main(int argc, char** argv) {
  namespace hc = haraux::cli;
  hc::RunConfig cfg;
  std::string seed_text;

  CLI::App app{"haraux: computable lower bounds for Haraux and Fenchel-Young "
               "functions"};
  app.set_config("--config", "", "key=value file mirroring the long flags");
  app.add_option("command", cfg.command,
                 "bound | sweep | verify | figure1 | gauge")
      ->required()
      ->check(CLI::IsMember({"bound", "sweep", "verify", "figure1", "gauge"}));
  app.add_option("--phi", cfg.phi, "Fenchel-Young mode: catalog function");
  app.add_option("--op-a", cfg.op_a, "Haraux mode: operator A");
  app.add_option("--f", cfg.f, "kernel W = grad f");
  app.add_option("--op-w", cfg.op_w, "kernel operator W");
  app.add_option("--method", cfg.methods, "bound method(s)")->delimiter(',');
  app.add_option("--gamma", cfg.gammas, "step size(s) gamma > 0")
      ->delimiter(',');
  app.add_option("--point", cfg.points,
                 "evaluation point 'x1,x2;u1,u2' (gauge: 'x;y*')");
  app.add_option("--grid", cfg.grid, "sweep grid 'lo:hi:n;lo:hi:m'");
  app.add_option("--seed", seed_text, "RNG seed (overrides HARAUX_SEED)");
  app.add_option("--out", cfg.out,
                 "output file (figure1: output directory)");
  app.add_option("--format", cfg.format, "csv | svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  app.add_option("--op-c", cfg.op_c, "gauge: primal operator C");
  app.add_option("--op-dinv", cfg.op_dinv, "gauge: dual operator D^-1");
  app.add_option("--op-wx", cfg.op_wx, "gauge: primal kernel");
  app.add_option("--op-wy", cfg.op_wy, "gauge: dual kernel");
  app.add_option("--matrix", cfg.matrix, "gauge: file holding L");
  app.add_option("--corrupt-tolerance", cfg.corrupt_check,
                 "verify: force the named check to fail")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hc::kExitConfigError;
  }

  if (!seed_text.empty()) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(seed_text.c_str(), &end, 0);
    if (errno != 0 || *end != '\0' || seed_text.front() == '-') {
      std::cerr << "error: --seed: cannot parse '" << seed_text << "'\n";
      return hc::kExitConfigError;
    }
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  return hc::RunCommand(cfg, std::cout, std::cerr);
}
