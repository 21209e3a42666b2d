#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "bla/bla_logf.hpp"
#include "bla/bla_logn.hpp"
#include "bla/bla_sqrtf.hpp"
#include "bla/lattice.hpp"
#include "bla/wire.hpp"

namespace bla {

enum class AlgoKind { sqrtf, logn, logf };

std::string algo_name(AlgoKind a);
std::optional<AlgoKind> algo_from_name(const std::string& s);

struct RunConfig {
  int n = 0;
  int f = 0;
  std::vector<int> byzantine_ids;  // sorted, unique; t = size()
  AlgoKind algorithm = AlgoKind::sqrtf;
  std::vector<Element> inputs;  // one per id; only correct ids' matter
  std::string adversary;        // "name" or "name(arg)"
  std::uint64_t seed = 0;
  int universe_size = 0;  // nonces per origin; h(X) = n * universe_size

  int t() const { return static_cast<int>(byzantine_ids.size()); }
  Universe universe() const { return Universe{n, universe_size}; }
  bool is_byz(int id) const;

  nlohmann::ordered_json to_json() const;
  // Parse with strict field checking: exactly the documented keys.
  static std::optional<RunConfig> from_json(const nlohmann::json& j,
                                            std::string* error);
};

// Empty optional when the config is well-formed; otherwise a diagnostic.
std::optional<std::string> validate_config(const RunConfig& cfg);

struct Verdict {
  std::string property;
  bool pass = true;
  std::string witness;  // nonempty on failure
};

// Everything a checker needs from one run, grouped per boundary: sqrtf has
// one boundary per outer round, the log algorithms one for the initial
// gradecast (index 0) plus one per iteration. Snapshots are stored for all
// ids; entries for Byzantine ids describe the shadow process that generated
// the honest baseline behavior and carry no correctness weight.
struct Transcript {
  RunConfig cfg;
  std::set<int> byz;
  std::vector<int> correct;  // ascending
  int sub_rounds = 0;
  int outer_rounds = 0;  // boundary count: sqrtf rounds; initial + iterations
  std::vector<int> env_total;    // per sub-round, all envelopes
  std::vector<int> env_self;     // per sub-round, from == to
  std::vector<int> env_correct;  // per sub-round, correct senders
  std::vector<std::vector<SqrtfSnap>> sq;  // [boundary][id]
  std::vector<std::vector<LognSnap>> ln;
  std::vector<std::vector<LogfSnap>> lf;
  // Values of Byzantine origin scored >= 1 by some correct process at the
  // initial round: the instrumented Upward-Validity bound.
  std::map<int, std::vector<Element>> recorded_byz;
  std::vector<std::optional<Element>> outputs;      // per id
  std::vector<std::optional<int>> decision_rounds;  // per id
  std::vector<int> term_rounds;                     // sqrtf, per id
  std::vector<std::string> digests;  // per boundary, correct-state digest

  int envelopes_total() const;
  int envelopes_no_self() const;
};

// Deterministic lockstep execution. The config must validate.
Transcript simulate(const RunConfig& cfg);

// Stable-key-order report for byte-identical diffing.
nlohmann::ordered_json make_report(const Transcript& tr,
                                   const std::vector<Verdict>& verdicts);

}  // namespace bla
