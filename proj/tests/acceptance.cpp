// Acceptance battery. Each numbered criterion prints one pass/FAIL line;
// the process exits nonzero if any line fails. Run it from the build tree:
// no external inputs, no flags.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "bla/bla_logf.hpp"
#include "bla/bla_logn.hpp"
#include "bla/bla_sqrtf.hpp"
#include "bla/checker.hpp"
#include "bla/lattice.hpp"
#include "bla/rng.hpp"
#include "bla/search.hpp"
#include "bla/sim.hpp"
#include "bla/sweep.hpp"
#include "membership_oracle.hpp"

using namespace bla;

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

const std::vector<int> kMatrixN{4, 7, 10, 13, 16};
const std::vector<std::string> kAdversaries{
    "silent",         "crash_at(4)",  "terrible(2)", "equivocate_split",
    "inject_fresh",   "lie_label",    "random_within_safe(1)"};
constexpr int kSeeds = 20;
constexpr int kUniverse = 8;

const std::set<std::string> kCoreProps{
    "comparability", "downward_validity", "upward_validity", "at_most_one",
    "round_bound",   "message_bound",     "output_present"};

struct Accum {
  long long core_checked = 0, core_failed = 0;
  long long invariant_checked = 0, invariant_failed = 0;
  long long envelope_violations = 0;
  std::vector<std::string> notes;  // first few failure witnesses

  void note(const std::string& s) {
    if (notes.size() < 5) notes.push_back(s);
  }

  void absorb(const Transcript& tr, const std::vector<Verdict>& verdicts) {
    for (const Verdict& v : verdicts) {
      const bool core = kCoreProps.count(v.property) != 0;
      ++(core ? core_checked : invariant_checked);
      if (!v.pass) {
        ++(core ? core_failed : invariant_failed);
        note(v.property + ": " + v.witness);
      }
    }
    const long long nn = 1ll * tr.cfg.n * tr.cfg.n;
    for (int s = 0; s < tr.sub_rounds; ++s)
      if (tr.env_correct[s] > nn || tr.env_total[s] > nn) {
        ++envelope_violations;
        note("sub-round " + std::to_string(s + 1) + " envelope count above " +
             std::to_string(nn));
      }
    if (tr.envelopes_total() > tr.sub_rounds * nn) {
      ++envelope_violations;
      note("total envelopes above sub_rounds * n^2");
    }
  }
};

RunConfig matrix_cfg(int n, int t, AlgoKind algo, const std::string& adv,
                     std::uint64_t seed) {
  RunConfig cfg;
  cfg.n = n;
  cfg.f = (n - 1) / 3;
  cfg.byzantine_ids = sweep_byzantine_ids(n, t, seed);
  cfg.algorithm = algo;
  cfg.inputs = sweep_inputs(n, kUniverse, seed);
  cfg.adversary = adv;
  cfg.seed = seed;
  cfg.universe_size = kUniverse;
  return cfg;
}

int ceil_sqrt(int x) {
  int r = 0;
  while (r * r < x) ++r;
  return r;
}

bool line(int idx, const char* what, bool ok, double elapsed) {
  std::printf("%d. %-58s %s %5.2fs\n", idx, what, ok ? "pass" : "FAIL",
              elapsed);
  return ok;
}

}  // namespace

int main() {
  bool all_ok = true;
  Accum acc;

  // 1: the sqrtf protocol stays within its round budget on the whole
  // matrix, serially, inside the time box. These runs also feed the
  // property and envelope tallies used by criteria 4, 5, and 7.
  const auto t1 = Clock::now();
  bool c1 = true;
  for (int n : kMatrixN)
    for (const std::string& adv : kAdversaries)
      for (int seed = 1; seed <= kSeeds; ++seed) {
        const int f = (n - 1) / 3;
        const RunConfig cfg = matrix_cfg(n, f, AlgoKind::sqrtf, adv, seed);
        const Transcript tr = simulate(cfg);
        acc.absorb(tr, check_all(tr));
        const int h = cfg.universe().height();
        if (tr.sub_rounds > 3 * sqrtf_round_cap(h, f)) {
          c1 = false;
          acc.note("sqrtf n=" + std::to_string(n) + " adv=" + adv +
                   " ran " + std::to_string(tr.sub_rounds) + " sub-rounds");
        }
      }
  const double e1 = secs(t1);
  all_ok &= line(1, "sqrtf sub-rounds within min(3h+6, 6*ceilsqrt(f)+6)",
                 c1 && e1 < 10.0, e1);

  // 2: early stopping. With t < f actual faults the sqrtf run finishes by
  // outer round 2*ceilsqrt(t)+2; fault-free runs decide by round 3.
  const auto t2 = Clock::now();
  bool c2 = true;
  for (int n : kMatrixN) {
    const int f = (n - 1) / 3;
    for (int t = 0; t < f; ++t)
      for (const std::string& adv : kAdversaries) {
        if (t == 0 && adv != "silent") continue;
        for (int seed = 1; seed <= kSeeds; ++seed) {
          const RunConfig cfg = matrix_cfg(n, t, AlgoKind::sqrtf, adv, seed);
          const Transcript tr = simulate(cfg);
          acc.absorb(tr, check_all(tr));
          bool ok;
          if (t == 0) {
            ok = tr.outer_rounds <= 3 && tr.sub_rounds <= 9;
            for (int i : tr.correct)
              ok = ok && tr.decision_rounds[i] && *tr.decision_rounds[i] <= 3;
          } else {
            ok = tr.outer_rounds <= 2 * ceil_sqrt(t) + 2;
          }
          if (!ok) {
            c2 = false;
            acc.note("early stop broke at n=" + std::to_string(n) +
                     " t=" + std::to_string(t) + " adv=" + adv);
          }
        }
      }
  }
  all_ok &= line(2, "early stopping: t faults finish by 2*ceilsqrt(t)+2",
                 c2, secs(t2));

  // 3: fixed-length protocols take exactly their advertised sub-round
  // count. The matrix is larger here, so points run under OpenMP.
  const auto t3 = Clock::now();
  std::vector<RunConfig> fixed;
  for (int n : kMatrixN)
    for (AlgoKind algo : {AlgoKind::logn, AlgoKind::logf})
      for (const std::string& adv : kAdversaries)
        for (int seed = 1; seed <= kSeeds; ++seed)
          fixed.push_back(matrix_cfg(n, (n - 1) / 3, algo, adv, seed));
  bool c3 = true;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(fixed.size()); ++i) {
    const RunConfig& cfg = fixed[i];
    const Transcript tr = simulate(cfg);
    const std::vector<Verdict> verdicts = check_all(tr);
    const int want = cfg.algorithm == AlgoKind::logn
                         ? 3 + 3 * logn_iterations(cfg.n)
                         : 3 + 4 * logf_levels(cfg.f);
    const bool exact = tr.sub_rounds == want;
#pragma omp critical
    {
      acc.absorb(tr, verdicts);
      if (!exact) {
        c3 = false;
        acc.note(algo_name(cfg.algorithm) + " n=" + std::to_string(cfg.n) +
                 " took " + std::to_string(tr.sub_rounds) + " sub-rounds");
      }
    }
  }
  all_ok &= line(3, "logn/logf take exactly 3+3log2(n) / 3+4log2(f) subs",
                 c3, secs(t3));

  // 4: envelope budgets, tallied across every run above.
  all_ok &= line(4, "envelopes within n^2 per sub-round, n^2*subs total",
                 acc.envelope_violations == 0, 0.0);

  // 5: the agreement and validity verdicts passed in every run.
  all_ok &= line(5, "agreement and validity verdicts pass in every run",
                 acc.core_failed == 0 && acc.core_checked > 0, 0.0);

  // 6: bounded exhaustive adversary search over the broadcast cores.
  const auto t6 = Clock::now();
  const SearchStats stats = run_search(true);
  const double e6 = secs(t6);
  all_ok &= line(6, "exhaustive broadcast adversary search is violation-free",
                 stats.violations == 0 && stats.transcripts <= 1000000 &&
                     e6 < 60.0,
                 e6);
  if (stats.violations != 0) acc.note("search witness: " + stats.first_witness);

  // 7: the per-round structural invariants passed in every run.
  all_ok &= line(7, "per-round structural invariants pass in every run",
                 acc.invariant_failed == 0 && acc.invariant_checked > 0, 0.0);

  // 8: membership in a generated family agrees with a brute-force
  // closure: every 4-tag generating set up to 10 members, every 6-tag set
  // up to 2 members, and a 30000-set random 6-tag corpus.
  const auto t8 = Clock::now();
  long long oracle_checks = 0, oracle_mismatches = 0;
  {
    std::vector<Element> four(16), six(64);
    for (unsigned m = 0; m < 16; ++m)
      four[m] = testutil::element_from_mask(m, 4);
    for (unsigned m = 0; m < 64; ++m)
      six[m] = testutil::element_from_mask(m, 6);
    const auto audit = [&](const std::vector<unsigned>& members,
                           const std::vector<Element>& all) {
      std::vector<Element> elems;
      elems.reserve(members.size());
      for (unsigned m : members) elems.push_back(all[m]);
      const GeneratingSet g(std::move(elems));
      const std::uint64_t closure = testutil::or_closure(members);
      for (unsigned c = 0; c < all.size(); ++c) {
        ++oracle_checks;
        if (member_of_generated(g, all[c]) !=
            testutil::member_oracle(closure, c))
          ++oracle_mismatches;
      }
    };
    for (unsigned gset = 0; gset < (1u << 16); ++gset) {
      if (__builtin_popcount(gset) > 10) continue;
      std::vector<unsigned> members;
      for (unsigned m = 0; m < 16; ++m)
        if (gset >> m & 1u) members.push_back(m);
      audit(members, four);
    }
    audit({}, six);
    for (unsigned a = 0; a < 64; ++a) {
      audit({a}, six);
      for (unsigned b = a + 1; b < 64; ++b) audit({a, b}, six);
    }
    SplitMix64 rng(20260819);
    for (int k = 0; k < 30000; ++k) {
      std::vector<unsigned> members;
      const int count = 1 + static_cast<int>(rng.below(6));
      for (int j = 0; j < count; ++j)
        members.push_back(static_cast<unsigned>(rng.below(64)));
      audit(members, six);
    }
  }
  const double e8 = secs(t8);
  all_ok &= line(8, "membership matches brute-force closure on the corpus",
                 oracle_mismatches == 0 && e8 < 5.0, e8);

  // 9: simulation and reporting are a pure function of the config.
  const auto t9 = Clock::now();
  bool c9 = true;
  SplitMix64 rng(424242);
  for (int k = 0; k < 10; ++k) {
    const int n = kMatrixN[rng.below(kMatrixN.size())];
    const int f = (n - 1) / 3;
    const AlgoKind algo = static_cast<AlgoKind>(rng.below(3));
    const std::string adv = kAdversaries[rng.below(kAdversaries.size())];
    const std::uint64_t seed = rng.below(1000000);
    const int t = static_cast<int>(rng.below(f + 1));
    const RunConfig cfg = matrix_cfg(n, t, algo, adv, seed);
    const auto report = [&cfg] {
      const Transcript tr = simulate(cfg);
      return make_report(tr, check_all(tr)).dump(2);
    };
    if (report() != report()) {
      c9 = false;
      acc.note("nondeterministic report for seed " + std::to_string(seed));
    }
  }
  all_ok &= line(9, "repeat runs produce byte-identical reports", c9,
                 secs(t9));

  if (!all_ok)
    for (const std::string& s : acc.notes)
      std::fprintf(stderr, "  detail: %s\n", s.c_str());
  return all_ok ? 0 : 1;
}
