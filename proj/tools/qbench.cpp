// Benchmark of the OpenMP kernels against their serial references: the
// mediality scan, the principal-congruence meet, and the enumeration
// candidate filter.  Results must agree exactly; timings are wall clock.

#include <chrono>
#include <cstdio>
#include <random>

#include "qforge/enumerate.hpp"

using namespace qf;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_ms(F&& f, int repeats) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  return ms_since(t0) / repeats;
}

std::vector<Quandle> benchmark_pool() {
  std::vector<Quandle> pool;
  for (const GalleryItem& it : gallery())
    if (it.quandle.n >= 8) pool.push_back(it.quandle);
  std::mt19937 rng(12345);
  for (int i = 0; i < 6; ++i) {
    AffineMesh m = random_mesh(rng, 3, 8);
    Quandle q = sum_mesh(m).quandle;
    if (q.n >= 12) pool.push_back(q);
  }
  return pool;
}

}  // namespace

int main() {
  std::vector<Quandle> pool = benchmark_pool();
  std::printf("%zu quandles, sizes", pool.size());
  for (const Quandle& q : pool) std::printf(" %d", q.n);
  std::printf("\n\n%-28s %12s %12s %9s\n", "kernel", "serial (ms)", "parallel (ms)", "speedup");

  {
    double ser = time_ms(
        [&] {
          for (const Quandle& q : pool) (void)medial_check_serial(q);
        },
        3);
    double par = time_ms(
        [&] {
          for (const Quandle& q : pool) (void)medial_check(q);
        },
        3);
    for (const Quandle& q : pool)
      if (medial_check(q).has_value() != medial_check_serial(q).has_value()) {
        std::fprintf(stderr, "mediality kernels disagree\n");
        return 1;
      }
    std::printf("%-28s %12.2f %12.2f %8.2fx\n", "medial_check", ser, par, ser / par);
  }

  {
    double ser = time_ms(
        [&] {
          for (const Quandle& q : pool) (void)principal_meet_serial(q);
        },
        3);
    double par = time_ms(
        [&] {
          for (const Quandle& q : pool) (void)principal_meet(q);
        },
        3);
    for (const Quandle& q : pool)
      if (principal_meet(q) != principal_meet_serial(q)) {
        std::fprintf(stderr, "meet kernels disagree\n");
        return 1;
      }
    std::printf("%-28s %12.2f %12.2f %8.2fx\n", "principal_meet", ser, par, ser / par);
  }

  {
    RunConfig one;
    one.jobs = 1;
    RunConfig def;
    auto a = enumerate_si(8, one);
    auto b = enumerate_si(8, def);
    if (a.reps.size() != b.reps.size()) {
      std::fprintf(stderr, "enumeration kernels disagree\n");
      return 1;
    }
    double ser = time_ms([&] { (void)enumerate_si(8, one); }, 1);
    double par = time_ms([&] { (void)enumerate_si(8, def); }, 1);
    std::printf("%-28s %12.2f %12.2f %8.2fx\n", "enumerate_si(8)", ser, par, ser / par);
  }

  return 0;
}
