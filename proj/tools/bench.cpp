// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License.  You
// may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied.  See the License for the specific language governing
// permissions and limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "adtape/bench/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"reverse-mode autodiff gradient micro-benchmarks"};
  app.require_subcommand(1);

  adtape::bench::SweepOptions sweep;
  std::string out_path = "bench.csv";
  CLI::App* run = app.add_subcommand(
      "run", "time gradient and plain evaluations over a doubling size sweep");
  run->add_option("--functor", sweep.functor, "restrict to one functor (see `list`)");
  run->add_option("--max-dim", sweep.max_dim, "largest input size of the sweep")
      ->check(CLI::PositiveNumber);
  run->add_option("--calls", sweep.calls, "repetitions per timing measurement")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "CSV output file");

  adtape::bench::VerifyOptions verify;
  CLI::App* check = app.add_subcommand(
      "verify", "compare gradients against central finite differences");
  check->add_option("--functor", verify.functor, "restrict to one functor");
  check->add_option("--tol", verify.tol, "maximum relative error")
      ->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list", "print the registered functors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::ofstream csv(out_path);
      if (!csv) {
        std::cerr << "bench: cannot open '" << out_path << "' for writing\n";
        return 1;
      }
      adtape::bench::run_sweep(sweep, csv);
      if (!csv.good()) {
        std::cerr << "bench: write to '" << out_path << "' failed\n";
        return 1;
      }
      std::cout << "wrote " << out_path << '\n';
    } else if (check->parsed()) {
      if (!adtape::bench::verify_gradients(verify, std::cout)) return 1;
    } else if (list->parsed()) {
      for (const auto& f : adtape::bench::registry()) std::cout << f.name << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
