// Microbenchmarks for the exact-arithmetic hot paths: the kernel solver,
// fiber form certification, and the full clearing pipeline.

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "fibral/avoidance.hpp"
#include "fibral/clearing.hpp"
#include "fibral/kernel_solver.hpp"
#include "fibral/kodaira.hpp"
#include "fibral/pairing.hpp"
#include "fibral/surface.hpp"
#include "fibral/witness.hpp"

namespace {

using namespace fibral;

RationalMatrix kernel_matrix(std::size_t t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(1, 12), den(1, 12);
  RationalMatrix w(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < t; ++j) {
      if (i == j) continue;
      Rational value(Integer(num(rng)), Integer(den(rng)));
      value.canonicalize();
      w(i, j) = value;
      sum += value;
    }
    w(i, i) = -sum;
  }
  return w;
}

SurfaceModel cycle_surface(std::size_t n) {
  SurfaceModel surface;
  surface.name = "bench-" + std::to_string(n);
  surface.class_group_torsion = true;
  surface.places.push_back(kodaira_cycle(n, "v"));
  surface.ample.profile_id = "ample";
  surface.ample.generic_degree = Rational(Integer(n));
  for (std::size_t i = 0; i < n; ++i)
    surface.ample.pairings["v"]["C" + std::to_string(i)] = 1;
  surface.ample.support = {"P"};
  return surface;
}

void bm_kernel_solver(benchmark::State& state) {
  const std::size_t t = static_cast<std::size_t>(state.range(0));
  RationalMatrix w = kernel_matrix(t, 42);
  KernelProblem problem = verify_kernel_hypotheses(w);
  for (auto _ : state) {
    PositiveKernelVector a = positive_row_kernel(problem);
    benchmark::DoNotOptimize(a.weights.data());
  }
}
BENCHMARK(bm_kernel_solver)->DenseRange(2, 10, 2);

void bm_fiber_form(benchmark::State& state) {
  FiberModel fiber = kodaira_cycle(static_cast<std::size_t>(state.range(0)), "v");
  for (auto _ : state) {
    SemidefinitenessCertificate cert = check_fiber_form(fiber);
    benchmark::DoNotOptimize(cert.restricted_minors.data());
  }
}
BENCHMARK(bm_fiber_form)->DenseRange(2, 10, 2);

void bm_synthesize(benchmark::State& state) {
  SurfaceModel surface = cycle_surface(static_cast<std::size_t>(state.range(0)));
  ChoiceMap choice;
  choice.choices["v"] = "C0";
  for (auto _ : state) {
    Witness w = synthesize_witness(surface, choice);
    benchmark::DoNotOptimize(w.degree.get_num().get_mpz_t());
  }
}
BENCHMARK(bm_synthesize)->DenseRange(2, 8, 2);

void bm_prove_theorem(benchmark::State& state) {
  SurfaceModel surface = cycle_surface(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    MorphismCertificate cert = prove_theorem(surface);
    benchmark::DoNotOptimize(cert.log.steps.data());
  }
}
BENCHMARK(bm_prove_theorem)->DenseRange(2, 6, 2);

void bm_replay(benchmark::State& state) {
  SurfaceModel surface = cycle_surface(static_cast<std::size_t>(state.range(0)));
  MorphismCertificate cert = prove_theorem(surface);
  for (auto _ : state) {
    ReplayResult result = replay_certificate(surface, cert);
    benchmark::DoNotOptimize(result.ok);
  }
}
BENCHMARK(bm_replay)->DenseRange(2, 6, 2);

void bm_avoid_line(benchmark::State& state) {
  const unsigned q = static_cast<unsigned>(state.range(0));
  std::vector<ProjectivePoint> line = all_projective_points(q, 1);
  for (auto _ : state) {
    HomogeneousForm form = find_avoiding_form(q, 1, line);
    benchmark::DoNotOptimize(form.degree);
  }
}
BENCHMARK(bm_avoid_line)->Arg(2)->Arg(3)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
