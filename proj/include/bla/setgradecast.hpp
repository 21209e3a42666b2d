#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bla/gradecast.hpp"
#include "bla/lattice.hpp"
#include "bla/wire.hpp"

namespace bla {

// Per-instance result of a set broadcast: each value the instance carried
// that scored at least 1, with its score, plus the label the leader attached
// as this process received it.
struct ScoredValue {
  Element value;
  int score = 0;
  bool operator==(const ScoredValue&) const = default;
};

struct SgcResult {
  int leader = -1;
  bool observed = false;  // any record for this instance arrived
  std::optional<std::int64_t> label;  // from the leader's own record
  std::vector<ScoredValue> scored;    // canonical value order
};

// One process's view of n concurrent set-broadcast instances in one round.
//
// Value admission is per instance: the safe row for instance q is resolved
// once, from the label on q's leader record when there is one (resolvers that
// ignore the label can always answer). A null row means nothing in that
// instance is admissible. Every receipt in the instance (leader set, echo,
// confirm) is filtered against that one row.
class SgcBank {
 public:
  // Resolver from (leader id, label on the leader's record) to the safe row.
  using RowFn =
      std::function<const GeneratingSet*(int leader,
                                         const std::optional<std::int64_t>&)>;

  SgcBank(int n, int f, int self);

  void begin(RowFn row);

  // Sub-round 1 record for this process's own instance. The set must be
  // duplicate-free (canonical); the label is attached verbatim.
  Record lead(const std::vector<Element>& set,
              std::optional<std::int64_t> label) const;
  // Sub-round 2: forward each received leader set with inadmissible values
  // removed (possibly empty), carrying the leader's label.
  std::vector<Record> echoes() const;
  // Sub-round 3: per observed instance, every value echoed by at least n-f
  // distinct senders (possibly the empty set).
  std::vector<Record> confirms() const;

  void deliver(int sub, const std::vector<Arrival>& arrivals);

  // After sub-round 3 delivery: per-instance scored values. Grading is per
  // value: score 2 at confirm frequency >= n-f, score 1 at >= f+1.
  std::vector<SgcResult> results() const;

 private:
  const GeneratingSet* row_for(int q);

  int n_, f_, self_;
  RowFn row_;
  std::vector<std::optional<std::vector<Element>>> lead_;  // admitted subset
  std::vector<std::optional<std::int64_t>> lead_label_;
  std::vector<char> row_resolved_;
  std::vector<const GeneratingSet*> irow_;
  std::vector<char> observed_;
  std::vector<Tally> t2_, t3_;
  std::vector<std::set<int>> seen1_, seen2_, seen3_;
};

}  // namespace bla
