#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bla/lattice.hpp"
#include "bla/rng.hpp"
#include "bla/sim.hpp"
#include "bla/wire.hpp"

namespace bla {

// What a Byzantine strategy sees when it is asked to act: the sub-round
// coordinates, the run inputs, and an oracle for any process's current
// receive-side filter (null row = nothing admissible there). The oracle views
// derive from messages alone, so exposing them keeps the adversary within
// the omniscient-network model.
struct NetView {
  int n = 0;
  int f = 0;
  AlgoKind algorithm = AlgoKind::sqrtf;
  int universe_size = 0;
  int sub = 0;          // global, 1-based
  int outer_round = 0;  // sqrtf round; 1 = initial, 1+it = iteration (log)
  int phase = 0;        // 1..3 broadcast phases, 4 = logf exchange
  bool accept_all = false;  // receive filters are off (initial round)
  const std::vector<Element>* inputs = nullptr;
  // Every envelope routed in earlier sub-rounds of this run.
  const std::vector<Envelope>* history = nullptr;
  std::function<const GeneratingSet*(int target, int leader,
                                     const std::optional<std::int64_t>&)>
      row;
  SplitMix64* rng = nullptr;  // per-run adversary stream
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  // Transform the honest sends of Byzantine process `self` for this
  // sub-round into what actually goes on the wire.
  virtual std::vector<Send> emit(int self, std::vector<Send> honest,
                                 const NetView& view) = 0;
};

// Names accepted by make_adversary; parameterized ones listed as "name(r)".
std::vector<std::string> builtin_adversaries();

// Parse "name" or "name(integer)". Returns nullopt on malformed input.
std::optional<std::pair<std::string, std::optional<long long>>>
parse_adversary(const std::string& spec);

// Instantiate by spec string; null if unknown or malformed. run_seed feeds
// strategies that draw randomness.
std::unique_ptr<Adversary> make_adversary(const std::string& spec,
                                          std::uint64_t run_seed);

}  // namespace bla
