// Benchmark comparing the OpenMP region/verification kernels against their
// serial reference implementations. Both must produce identical results; the
// point here is throughput.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pauli_compat/compatibility.hpp"
#include "pauli_compat/verify.hpp"

using namespace pauli_compat;

namespace {

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s %10.2f ms %10.2f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  int resolution = quick ? 40 : 160;
  int count = quick ? 20000 : 400000;
  long trials = quick ? 2000 : 40000;
  long iterations = quick ? 4000 : 40000;

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif
  std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

  UnbiasedBinaryObservable obs(0.8, {1, 0, 0});
  PauliChannel ch({0.4, 0.3, 0.2, 0.1});

  {
    std::vector<SimplexNode> serial, parallel;
    double ts = time_ms([&] { serial = simplex_region_sample_serial(obs, resolution); });
    double tp = time_ms([&] { parallel = simplex_region_sample(obs, resolution); });
    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i)
      same = serial[i].p == parallel[i].p && serial[i].compatible == parallel[i].compatible;
    report("simplex_region_sample", ts, tp, same);
  }

  {
    EllipsoidSamples serial, parallel;
    double ts = time_ms([&] { serial = ellipsoid_sample_serial(ch, count); });
    double tp = time_ms([&] { parallel = ellipsoid_sample(ch, count); });
    bool same = serial.points == parallel.points && serial.geometry == parallel.geometry;
    report("ellipsoid_sample", ts, tp, same);
  }

  {
    OptimalPrimal prim = optimal_primal(ch, normalized({1, 1, 1}));
    HermitianOp minus(ComplexMat::identity(4) - prim.a_prime_plus.mat());
    InstrumentCheck serial{}, parallel{};
    double ts = time_ms(
        [&] { serial = instrument_consistency_serial(prim.a_prime_plus, minus, ch, trials, 7); });
    double tp =
        time_ms([&] { parallel = instrument_consistency(prim.a_prime_plus, minus, ch, trials, 7); });
    bool same = serial.max_channel_error == parallel.max_channel_error &&
                serial.max_probability_error == parallel.max_probability_error;
    report("instrument_consistency", ts, tp, same);
  }

  {
    SearchReport serial{}, parallel{};
    double ts =
        time_ms([&] { serial = primal_search_serial(ch, normalized({1, 1, 1}), iterations, 7); });
    double tp = time_ms([&] { parallel = primal_search(ch, normalized({1, 1, 1}), iterations, 7); });
    bool same = serial.best_s == parallel.best_s && serial.iterations == parallel.iterations;
    report("primal_search", ts, tp, same);
  }

  return 0;
}
