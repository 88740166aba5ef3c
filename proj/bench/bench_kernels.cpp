// Wall-time comparison of the OpenMP kernels against the serial reference
// implementations, with a correctness cross-check on every pair.
//
//   kinetra_bench [n_cells] [n_speeds] [reps]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kinetra/reference.hpp"
#include "kinetra/solver1d.hpp"

using namespace kinetra;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now();
    fn();
    best = std::min(best, now() - t0);
  }
  return best;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const int n_cells = argc > 1 ? std::atoi(argv[1]) : 20000;
  const int n_speeds = argc > 2 ? std::atoi(argv[2]) : 49;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 5;

  ModelParams params;
  params.grid = build_grid(n_speeds, 0.25, 0.25);
  params.prob = AccelProbability::linear();
  const auto tables = build_interaction_tables(params.grid);

  TableBuildOptions topts;
  topts.n_rho = 101;
  const auto table = build_maxwellian_table(params, tables, topts);

  const auto mesh = make_mesh(-1.0, 1.0, n_cells, Boundary::periodic);
  auto field0 = maxwellian_field(mesh, table,
                                 [](double x) { return 0.4 + 0.3 * std::exp(-8.0 * x * x); });
  const double dt = 0.9 * mesh.dx;
  const auto eps = EpsilonModel::variable(0.99);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("field: %d cells x %d speeds, best of %d reps\n\n", n_cells, n_speeds, reps);
  std::printf("%-28s %10s %10s %8s %12s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
              "max|diff|");

  auto report = [](const char* name, double ts, double tp, double diff) {
    std::printf("%-28s %10.4f %10.4f %7.2fx %12.3e\n", name, ts, tp, ts / tp, diff);
  };

  {
    auto a = field0;
    auto b = field0;
    const double tp = time_best_of(reps, [&] { transport_step(a, dt); });
    const double ts = time_best_of(reps, [&] { ref::transport_step(b, dt); });
    // both sides advanced `reps` times from the same state
    report("llf_transport", ts, tp, max_abs_diff(a.values, b.values));
  }
  {
    auto a = field0;
    auto b = field0;
    const double tp = time_best_of(reps, [&] { collision_step_bgk(a, dt, eps, table); });
    const double ts = time_best_of(reps, [&] { ref::collision_step_bgk(b, dt, eps, table); });
    report("bgk_relaxation", ts, tp, max_abs_diff(a.values, b.values));
  }
  {
    auto a = field0;
    auto b = field0;
    const double tp = time_best_of(
        reps, [&] { collision_step_boltzmann(a, dt, eps, params, tables, table); });
    const double ts = time_best_of(
        reps, [&] { ref::collision_step_boltzmann(b, dt, eps, params, tables); });
    report("boltzmann_penalized", ts, tp, max_abs_diff(a.values, b.values));
  }
  {
    MaxwellianTable a, b;
    TableBuildOptions o;
    o.n_rho = 51;
    const double tp = time_best_of(1, [&] { a = build_maxwellian_table(params, tables, o); });
    const double ts = time_best_of(1, [&] { b = ref::build_maxwellian_table(params, tables, o); });
    double diff = 0.0;
    for (int i = 0; i < o.n_rho; ++i)
      diff = std::max(diff, max_abs_diff(a.maxwellians[static_cast<std::size_t>(i)],
                                         b.maxwellians[static_cast<std::size_t>(i)]));
    report("maxwellian_table (1 rep)", ts, tp, diff);
  }
  return 0;
}
