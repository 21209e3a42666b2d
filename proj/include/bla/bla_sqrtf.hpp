#pragma once

#include <optional>
#include <set>
#include <vector>

#include "bla/gradecast.hpp"
#include "bla/lattice.hpp"
#include "bla/wire.hpp"

namespace bla {

// Round cap for the early-stopping algorithm: min(h(X)+2, 2*ceil(sqrt(f))+2).
int sqrtf_round_cap(int lattice_height, int f);

// End-of-round state snapshot used by the invariant checks.
struct SqrtfSnap {
  int round = 0;
  Element v_sent;   // value gradecast this round
  Element v;        // value after the round's join
  std::vector<Element> sv;  // safe set after the round (scored >= 1)
  std::set<int> bad;
  int newly_bad = 0;
  std::optional<int> decided_at;
  std::optional<Element> y;
  int term_round = 0;
  std::vector<GradeTriple> triples;
};

// One process of the early-stopping algorithm. Each outer round is one
// gradecast phase: every process leads with its current value, grades all n
// instances, then updates value, safe set, bad set, decision and termination
// round.
class SqrtfProcess {
 public:
  SqrtfProcess(int n, int f, int self, Element input, int round_cap);

  // sub is the global 1-based sub-round index; phase = (sub-1)%3+1.
  std::vector<Send> emit(int sub);
  void deliver(int sub, const std::vector<Arrival>& arrivals);
  // Call after delivering phase 3 of each round.
  SqrtfSnap finish_round();

  int term_round() const { return term_; }
  int round() const { return round_; }
  const Element& value() const { return v_; }
  const GeneratingSet& safe() const { return sv_; }
  const std::set<int>& bad() const { return bad_; }
  std::optional<int> decided_at() const { return decided_at_; }
  const std::optional<Element>& output() const { return y_; }

 private:
  int n_, f_, self_;
  int round_ = 0;
  int term_;
  Element v_;
  GeneratingSet sv_;
  std::set<int> bad_;
  std::optional<int> decided_at_;
  std::optional<Element> y_;
  GcBank bank_;
};

}  // namespace bla
