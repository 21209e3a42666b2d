#include "bla/bla_sqrtf.hpp"

#include <algorithm>
#include <cmath>

namespace bla {

int sqrtf_round_cap(int lattice_height, int f) {
  int root = 0;
  while (root * root < f) ++root;  // ceil(sqrt(f)) without float rounding
  return std::min(lattice_height + 2, 2 * root + 2);
}

SqrtfProcess::SqrtfProcess(int n, int f, int self, Element input,
                           int round_cap)
    : n_(n),
      f_(f),
      self_(self),
      term_(round_cap),
      v_(std::move(input)),
      bank_(n, f, self) {}

std::vector<Send> SqrtfProcess::emit(int sub) {
  const int phase = (sub - 1) % 3 + 1;
  std::vector<Send> out;
  switch (phase) {
    case 1:
      ++round_;
      // Round 1 accepts everything: the safe set is still empty.
      bank_.begin(GcFilter{round_ == 1, &sv_, &bad_});
      out.push_back(Send{kBroadcast, bank_.lead(v_)});
      break;
    case 2:
      for (Record& r : bank_.echoes()) out.push_back(Send{kBroadcast, r});
      break;
    case 3:
      for (Record& r : bank_.confirms()) out.push_back(Send{kBroadcast, r});
      break;
  }
  return out;
}

void SqrtfProcess::deliver(int sub, const std::vector<Arrival>& arrivals) {
  bank_.deliver((sub - 1) % 3 + 1, arrivals);
}

SqrtfSnap SqrtfProcess::finish_round() {
  SqrtfSnap snap;
  snap.round = round_;
  snap.v_sent = v_;
  snap.triples = bank_.grades();

  std::vector<Element> u1, u2;
  int newly_bad = 0;
  for (const GradeTriple& t : snap.triples) {
    if (t.score >= 1) u1.push_back(*t.value);
    if (t.score == 2) u2.push_back(*t.value);
    if (t.score <= 1 && bad_.insert(t.leader).second) ++newly_bad;
  }
  sv_ = GeneratingSet(u1);

  if (!decided_at_) {
    bool all_comparable = true;
    for (const Element& u : u2)
      if (!comparable(v_, u)) {
        all_comparable = false;
        break;
      }
    if (all_comparable) {
      decided_at_ = round_;
      y_ = v_;  // decide on the value this round gradecast
    }
  }
  v_ = join_all(u2);
  term_ = std::min(term_, round_ + newly_bad + 2);

  snap.v = v_;
  snap.sv = sv_.members();
  snap.bad = bad_;
  snap.newly_bad = newly_bad;
  snap.decided_at = decided_at_;
  snap.y = y_;
  snap.term_round = term_;
  return snap;
}

}  // namespace bla
