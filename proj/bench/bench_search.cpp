// Compares the serial reference implementations against the OpenMP paths
// for the two batch kernels: the exhaustive adversary search and the sweep
// runner. Prints wall times and the speedup; makes no assertions.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bla/search.hpp"
#include "bla/sweep.hpp"

using namespace bla;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void row(const char* what, double serial, double parallel, bool agree) {
  std::printf("%-24s %10.3fs %10.3fs %8.2fx   %s\n", what, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0,
              agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "openmp",
              "speedup");
  if (!sweep_parallel_available())
    std::printf("note: built without OpenMP, both columns run serially\n");

  SearchStats ss, sp;
  const double search_serial = timed([&] { ss = run_search(false); });
  const double search_parallel = timed([&] { sp = run_search(true); });
  row("adversary search", search_serial, search_parallel,
      ss.transcripts == sp.transcripts && ss.violations == sp.violations &&
          ss.first_witness == sp.first_witness);
  std::printf("  %lld transcripts, %lld violations\n", ss.transcripts,
              ss.violations);

  SweepSpec spec;
  spec.n_values = {4, 7, 10, 13, 16};
  spec.algorithms = {"sqrtf", "logn", "logf"};
  spec.adversaries = {"silent", "terrible(2)", "equivocate_split",
                      "inject_fresh", "random_within_safe(1)"};
  spec.seeds = {1, 2, 3, 4};
  const std::vector<RunConfig> points = expand_sweep(spec);
  SweepResult rs, rp;
  const double sweep_serial = timed([&] { rs = run_sweep_serial(points); });
  const double sweep_parallel = timed([&] { rp = run_sweep_parallel(points); });
  bool same = rs.rows.size() == rp.rows.size() && rs.all_pass == rp.all_pass;
  for (std::size_t i = 0; same && i < rs.rows.size(); ++i)
    same = rs.rows[i].report == rp.rows[i].report;
  row("sweep runner", sweep_serial, sweep_parallel, same);
  std::printf("  %zu runs, all_pass=%s\n", points.size(),
              rs.all_pass ? "true" : "false");
  return 0;
}
