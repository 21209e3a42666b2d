#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bla/sim.hpp"

namespace bla {

// Matrix description for batch runs. Per point: f = floor((n-1)/3); the
// Byzantine count t comes from t_values when given (cycled point order,
// clamped to f), otherwise from t_rule: "f" (all f ids faulty), "seed_mod_f"
// (t = seed mod (f+1)), or "zero". Byzantine ids are a seeded shuffle,
// inputs are per-id singleton tags with seeded nonces, so every expanded
// point is a pure function of the spec.
struct SweepSpec {
  std::vector<int> n_values;
  std::vector<std::string> algorithms;
  std::vector<std::string> adversaries;
  std::vector<std::uint64_t> seeds;
  int repetitions = 1;
  std::string t_rule = "f";
  std::vector<int> t_values;
  int universe_size = 8;

  static std::optional<SweepSpec> from_json(const nlohmann::json& j,
                                            std::string* error);
};

std::vector<RunConfig> expand_sweep(const SweepSpec& spec);

// Derivation helpers shared with the test fixtures.
std::vector<int> sweep_byzantine_ids(int n, int t, std::uint64_t seed);
std::vector<Element> sweep_inputs(int n, int universe_size,
                                  std::uint64_t seed);

struct SweepRow {
  RunConfig cfg;
  int sub_rounds = 0;
  int envelopes = 0;
  bool all_pass = true;
  std::string report_name;  // report_<confighash>.json
  std::string report;       // serialized RunReport
};

struct SweepResult {
  std::vector<SweepRow> rows;  // expansion order
  bool all_pass = true;
};

// stop_on_failure aborts after the first failing point (rows up to and
// including it are kept); the parallel runner ignores it.
SweepResult run_sweep_serial(const std::vector<RunConfig>& points,
                             bool stop_on_failure = false);
// Same rows as the serial runner, computed with OpenMP when available.
SweepResult run_sweep_parallel(const std::vector<RunConfig>& points);
bool sweep_parallel_available();

inline constexpr const char* kSweepCsvHeader =
    "n, f, t, algorithm, adversary, seed, sub_rounds, envelopes, all_pass";

std::string sweep_csv(const SweepResult& result);

}  // namespace bla
