#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bla/lattice.hpp"
#include "bla/wire.hpp"

namespace bla {

// Output of one graded-broadcast instance at one process: the leader id, the
// delivered value (absent when the score is 0) and a confidence score.
struct GradeTriple {
  int leader = -1;
  std::optional<Element> value;
  int score = 0;

  bool operator==(const GradeTriple&) const = default;
};

// Receive-side admission rule. With accept_all the value filter is off (first
// round of the main algorithms); otherwise a value is admitted only if it
// lies in the join-closed family generated by `safe`. Senders in `bad` are
// ignored outright, as are whole instances whose leader is in `bad`.
struct GcFilter {
  bool accept_all = false;
  const GeneratingSet* safe = nullptr;
  const std::set<int>* bad = nullptr;

  bool sender_ok(int sender) const {
    return bad == nullptr || bad->count(sender) == 0;
  }
  bool value_ok(const Element& v) const {
    if (accept_all) return true;
    return safe != nullptr && member_of_generated(*safe, v);
  }
};

// value -> distinct sender ids
using Tally = std::map<Element, std::set<int>>;

// Most frequent value in the tally, ties broken toward the canonically
// smallest value; absent if the tally is empty.
std::optional<Element> tally_majority(const Tally& t);

// Confirm step: the majority value if its frequency reaches n-f.
std::optional<Element> confirm_choice(const Tally& t, int n, int f);

// Grading step: score 2 at frequency >= n-f, score 1 at >= f+1, else
// (absent, 0).
GradeTriple grade_from_tally(int leader, const Tally& t, int n, int f);

// One process's view of the n concurrent gradecast instances of a single
// round. The caller drives the three sub-rounds: collect records to send
// with lead/echoes/confirms, then feed arrivals back with deliver.
class GcBank {
 public:
  GcBank(int n, int f, int self);

  void begin(const GcFilter& filt);

  // Sub-round 1 record for this process's own instance.
  Record lead(const Element& v) const;
  // Sub-round 2: echo every admitted leader value.
  std::vector<Record> echoes() const;
  // Sub-round 3: per instance, the majority echo if it reached n-f.
  std::vector<Record> confirms() const;

  // Feed the records that arrived at the end of sub-round `sub` (1..3).
  // Duplicates (same instance, same sender, same sub-round) are dropped,
  // first record wins.
  void deliver(int sub, const std::vector<Arrival>& arrivals);

  // After sub-round 3 delivery: one triple per instance.
  std::vector<GradeTriple> grades() const;

 private:
  bool admit(int instance, int sender, const Element& v) const;

  int n_, f_, self_;
  GcFilter filt_;
  std::vector<std::optional<Element>> lead_;
  std::vector<Tally> t2_, t3_;
  std::vector<std::set<int>> seen1_, seen2_, seen3_;
};

}  // namespace bla
