#pragma once

#include <string>

namespace bla {

// Bounded exhaustive adversary search over the graded-broadcast cores at
// n=4, f=1: one faulty process, a small value alphabet, every per-recipient
// per-sub-round choice the faulty process can make. Scenarios cover a faulty
// leader (open and restricted admission), a faulty echoer/confirmer against
// a correct leader, and the set-broadcast variants of both.
struct SearchStats {
  long long transcripts = 0;
  long long violations = 0;
  std::string first_witness;  // empty when no violation was found
};

SearchStats run_search(bool parallel);

}  // namespace bla
