// Benchmarks the OpenMP kernels against their serial reference
// implementations and reports agreement, so parallel changes stay honest.
//
// Usage: bench_kernels [n]   (default n = 2000)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snirkit/centrality.hpp"
#include "snirkit/generators.hpp"
#include "snirkit/rng.hpp"
#include "snirkit/simlab.hpp"
#include "snirkit/snir.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    f();
    const auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

void report(const char* kernel, double serial_ms, double parallel_ms,
            const std::string& agreement) {
  std::printf("%-24s %10.2f %10.2f %8.2fx   %s\n", kernel, serial_ms,
              parallel_ms, serial_ms / parallel_ms, agreement.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 2000;
  if (n < 100) {
    std::fprintf(stderr, "n must be at least 100\n");
    return 1;
  }
#ifdef _OPENMP
  std::printf("threads: %d, n = %d\n", omp_get_max_threads(), n);
#else
  std::printf("threads: 1 (no OpenMP), n = %d\n", n);
#endif
  std::printf("%-24s %10s %10s %9s   %s\n", "kernel", "serial ms", "omp ms",
              "speedup", "agreement");

  snirkit::GeneratorSpec spec = snirkit::make_preset("sbm", n);
  spec.seed = 20260825;
  const snirkit::DirectedGraph g = snirkit::generate(spec);

  // Responses from a known truth so the selection scan has signal.
  snirkit::Rng rng(7);
  snirkit::TruthSpec truth =
      snirkit::pick_truth(g, snirkit::TruthMode::RandomFromM, 10, rng);
  const Eigen::VectorXd y = snirkit::gen_snir_data(g, truth, rng);

  // Forward-addition candidate scan.
  const auto ctx = snirkit::DesignContext::standard(g, y, {});
  const int K = std::min(40, ctx.num_candidates());
  snirkit::SelectionPath ps, pp;
  const double fs = time_ms([&] { ps = snirkit::forward_addition_serial(ctx, K); });
  const double fp = time_ms([&] { pp = snirkit::forward_addition(ctx, K); });
  const bool same_path = ps.picks == pp.picks && ps.rss == pp.rss;
  report("forward_addition", fs, fp,
         same_path ? "bitwise equal" : "MISMATCH");

  // Betweenness and harmonic centrality.
  std::vector<double> bs, bp, hs, hp;
  const double bserial = time_ms([&] { bs = snirkit::betweenness_serial(g); });
  const double bpar = time_ms([&] { bp = snirkit::betweenness(g); });
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |diff| = %.3g", max_abs_diff(bs, bp));
    report("betweenness", bserial, bpar, buf);
  }
  const double hserial = time_ms([&] { hs = snirkit::harmonic_serial(g); });
  const double hpar = time_ms([&] { hp = snirkit::harmonic(g); });
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max |diff| = %.3g", max_abs_diff(hs, hp));
    report("harmonic", hserial, hpar, buf);
  }

  // End-to-end replication study (smaller, fixed reps).
  snirkit::StudyConfig sc;
  sc.gen = snirkit::make_preset("sbm", std::min(n, 1200));
  sc.s1_size = 8;
  sc.reps = 5;
  sc.seed = 99;
  snirkit::StudyResult sr;
  const double study_ms = time_ms([&] { sr = snirkit::run_study(sc); }, 1);
  std::printf("%-24s %10s %10.2f %9s   TPR %.3f over %d reps\n", "run_study",
              "-", study_ms, "-", sr.mean.tpr, sr.reps);

  return same_path ? 0 : 1;
}
