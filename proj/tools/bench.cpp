// Benchmark comparing the serial reference kernels against the OpenMP
// versions, plus one end-to-end replication loop. Kernel outputs are also
// cross-checked so a mismatch fails loudly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "hdbf/kernels.hpp"
#include "hdbf/rng.hpp"
#include "hdbf/simulation.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

hdbf::Matrix random_matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
  hdbf::Rng rng(seed);
  hdbf::Matrix m(n, p);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = rng.normal();
  return m;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel benchmark"};
  std::size_t n = 320, p = 2000;
  int repeats = 3;
  app.add_option("--n", n, "observation count for the Gram kernels");
  app.add_option("--p", p, "dimension for the Gram kernels");
  app.add_option("--repeats", repeats, "timing repeats (best-of)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

  const hdbf::Matrix x = random_matrix(n, p, 1);
  const hdbf::Matrix y = random_matrix(n / 2 + 1, p, 2);

  hdbf::Matrix g_s, g_p;
  report("gram (n x n from n x p)",
         time_best_of(repeats, [&] { g_s = hdbf::kernels::serial::gram(x); }),
         time_best_of(repeats, [&] { g_p = hdbf::kernels::gram(x); }));
  for (std::size_t k = 0; k < g_s.size(); ++k)
    if (g_s.data()[k] != g_p.data()[k]) {
      std::fprintf(stderr, "gram mismatch at %zu\n", k);
      return 1;
    }

  hdbf::Matrix c_s, c_p;
  report("cross_gram",
         time_best_of(repeats, [&] { c_s = hdbf::kernels::serial::cross_gram(x, y); }),
         time_best_of(repeats, [&] { c_p = hdbf::kernels::cross_gram(x, y); }));
  for (std::size_t k = 0; k < c_s.size(); ++k)
    if (c_s.data()[k] != c_p.data()[k]) {
      std::fprintf(stderr, "cross_gram mismatch at %zu\n", k);
      return 1;
    }

  double f_s = 0, f_p = 0;
  report("frobenius_sq",
         time_best_of(repeats, [&] { f_s = hdbf::kernels::serial::frobenius_sq(x); }),
         time_best_of(repeats, [&] { f_p = hdbf::kernels::frobenius_sq(x); }));
  if (f_s != f_p) {
    std::fprintf(stderr, "frobenius mismatch\n");
    return 1;
  }

  const std::size_t q = std::min<std::size_t>(p, 600);
  const hdbf::Matrix a = random_matrix(q, q, 3);
  const hdbf::Matrix b = random_matrix(q, q, 4);
  hdbf::Matrix m_s, m_p;
  report("matmul (square)",
         time_best_of(repeats, [&] { m_s = hdbf::kernels::serial::matmul(a, b); }),
         time_best_of(repeats, [&] { m_p = hdbf::kernels::matmul(a, b); }));
  for (std::size_t k = 0; k < m_s.size(); ++k)
    if (m_s.data()[k] != m_p.data()[k]) {
      std::fprintf(stderr, "matmul mismatch at %zu\n", k);
      return 1;
    }

  // end to end: one simulation cell, threaded vs forced single thread
  hdbf::SimConfig cfg;
  cfg.p = 200;
  cfg.n1 = 30;
  cfg.n2 = 50;
  cfg.n_reps = 200;
  cfg.seed = 99;
  hdbf::CellResult r_serial, r_parallel;
  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const double cell_s = time_best_of(1, [&] { r_serial = hdbf::run_cell(cfg); });
  omp_set_num_threads(max_threads);
  const double cell_p = time_best_of(1, [&] { r_parallel = hdbf::run_cell(cfg); });
  report("run_cell (200 reps, p=200)", cell_s, cell_p);
  if (r_serial.n_reject != r_parallel.n_reject ||
      r_serial.mean_d1_hat != r_parallel.mean_d1_hat) {
    std::fprintf(stderr, "run_cell results differ between thread counts\n");
    return 1;
  }
  std::printf("run_cell results identical across thread counts\n");
  return 0;
}
