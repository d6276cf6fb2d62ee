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

#ifndef ADTAPE_BENCH_HARNESS_HPP
#define ADTAPE_BENCH_HARNESS_HPP

#include <charconv>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adtape/bench/functors.hpp"
#include "adtape/functional/finite_diff.hpp"
#include "adtape/functional/gradient.hpp"

namespace adtape::bench {

struct BenchRow {
  std::string functor;
  std::string engine;  // "ad" or "plain"
  std::size_t dim = 0;
  std::size_t calls = 0;
  double total_seconds = 0.0;
  double ns_per_call = 0.0;
};

inline constexpr const char* csv_header = "functor,engine,dim,calls,total_seconds,ns_per_call";

namespace detail {

// std::to_chars keeps '.' as the decimal separator regardless of locale.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

inline volatile double sink = 0.0;

inline std::vector<const BenchFunctor*> select(const std::string& filter) {
  std::vector<const BenchFunctor*> picked;
  for (const BenchFunctor& f : registry())
    if (filter.empty() || f.name == filter) picked.push_back(&f);
  if (picked.empty())
    throw std::invalid_argument("adtape: unknown bench functor '" + filter + "'");
  return picked;
}

}  // namespace detail

inline void write_row(std::ostream& os, const BenchRow& row) {
  os << row.functor << ',' << row.engine << ',' << row.dim << ',' << row.calls << ','
     << detail::format_double(row.total_seconds) << ','
     << detail::format_double(row.ns_per_call) << '\n';
}

/// Parses rows written by write_row (header line skipped if present).
inline std::vector<BenchRow> parse_csv(std::istream& is) {
  std::vector<BenchRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == csv_header) continue;
    std::istringstream fields(line);
    BenchRow row;
    std::string token;
    std::getline(fields, row.functor, ',');
    std::getline(fields, row.engine, ',');
    std::getline(fields, token, ',');
    row.dim = std::stoul(token);
    std::getline(fields, token, ',');
    row.calls = std::stoul(token);
    std::getline(fields, token, ',');
    row.total_seconds = std::stod(token);
    std::getline(fields, token, ',');
    row.ns_per_call = std::stod(token);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct SweepOptions {
  std::string functor;       // empty = all
  std::size_t max_dim = 16 * 1024;
  std::size_t calls = 10000;
};

/// Times repeated gradient evaluations (engine "ad") and repeated plain
/// evaluations (engine "plain") of each selected functor for sizes
/// 1, 2, 4, ..., max_dim, appending one CSV row per (functor, size, engine).
/// Function values feed a sink so the loops cannot be optimized away.  Before
/// timing, both engines are evaluated once and must agree on the value; a
/// mismatch or an exception aborts that row with a diagnostic and the sweep
/// moves on.
inline void run_sweep(const SweepOptions& opt, std::ostream& csv,
                      std::ostream& diag = std::cerr) {
  using clock = std::chrono::steady_clock;
  const auto selected = detail::select(opt.functor);
  csv << csv_header << '\n';
  for (const BenchFunctor* f : selected) {
    for (std::size_t n = 1; n <= opt.max_dim; n *= 2) {
      try {
        std::vector<double> x(n, 0.0);
        f->fill(x);
        const std::size_t dim = x.size();

        double fx = 0.0;
        std::vector<double> grad;
        gradient(f->eval_ad, x, fx, grad);
        const double fx_plain = f->eval_plain(x);
        if (std::fabs(fx - fx_plain) > 1e-12 * std::max(1.0, std::fabs(fx_plain))) {
          diag << "bench: " << f->name << " dim " << dim
               << ": ad/plain values disagree (" << fx << " vs " << fx_plain
               << "), row skipped\n";
          continue;
        }

        double z = 0.0;
        auto start = clock::now();
        for (std::size_t m = 0; m < opt.calls; ++m) {
          gradient(f->eval_ad, x, fx, grad);
          z += fx;
        }
        double seconds = std::chrono::duration<double>(clock::now() - start).count();
        detail::sink = detail::sink + z;
        write_row(csv, {f->name, "ad", dim, opt.calls, seconds,
                        seconds * 1e9 / static_cast<double>(opt.calls)});

        z = 0.0;
        start = clock::now();
        for (std::size_t m = 0; m < opt.calls; ++m) z += f->eval_plain(x);
        seconds = std::chrono::duration<double>(clock::now() - start).count();
        detail::sink = detail::sink + z;
        write_row(csv, {f->name, "plain", dim, opt.calls, seconds,
                        seconds * 1e9 / static_cast<double>(opt.calls)});
      } catch (const std::exception& e) {
        diag << "bench: " << f->name << " dim " << n << ": " << e.what()
             << ", row skipped\n";
      }
    }
  }
}

struct VerifyOptions {
  std::string functor;  // empty = all
  double tol = 1e-5;
  std::vector<std::size_t> dims = {1, 2, 8, 64};
};

/// Checks every selected functor's reverse-mode gradient against the centered
/// finite-difference oracle of the plain evaluation, reporting the worst
/// relative error per functor.  Returns false when any error exceeds tol.
inline bool verify_gradients(const VerifyOptions& opt, std::ostream& report) {
  const auto selected = detail::select(opt.functor);
  bool all_ok = true;
  for (const BenchFunctor* f : selected) {
    double worst = 0.0;
    for (std::size_t n : opt.dims) {
      std::vector<double> x(n, 0.0);
      f->fill(x);
      double fx = 0.0;
      std::vector<double> grad;
      gradient(f->eval_ad, x, fx, grad);
      const std::vector<double> fd = fd_gradient(f->eval_plain, x);
      for (std::size_t i = 0; i < grad.size(); ++i) {
        const double scale =
            std::max(1.0, std::max(std::fabs(grad[i]), std::fabs(fd[i])));
        worst = std::max(worst, std::fabs(grad[i] - fd[i]) / scale);
      }
    }
    const bool ok = worst <= opt.tol;
    all_ok = all_ok && ok;
    report << f->name << ": max rel err " << worst << (ok ? "" : "  FAIL") << '\n';
  }
  return all_ok;
}

}  // namespace adtape::bench

#endif  // ADTAPE_BENCH_HARNESS_HPP
