#pragma once

#include <optional>
#include <vector>

#include "bla/gradecast.hpp"
#include "bla/lattice.hpp"
#include "bla/setgradecast.hpp"
#include "bla/wire.hpp"

namespace bla {

// Groups are contiguous id intervals [lo, hi). Each iteration splits every
// current group: the lower ceil(size/2) ids form the slave half, the rest the
// master half. Singleton groups stop splitting; their member counts as a
// master (it keeps its value and leads no instance).
struct IdInterval {
  int lo = 0;
  int hi = 0;
  int size() const { return hi - lo; }
  bool operator==(const IdInterval&) const = default;
};

int ceil_log2(int n);      // 0 for n <= 1
int logn_iterations(int n);  // ceil(log2 n)

// The group containing `id` after `level` splits (level 0 = everyone).
IdInterval group_at(int n, int level, int id);
// First master id of a group; slaves are [lo, split), masters [split, hi).
// Singletons have no slaves.
int split_point(const IdInterval& g);
bool is_slave(const IdInterval& g, int id);
// All groups at a level, in id order.
std::vector<IdInterval> groups_at_level(int n, int level);

struct LognSnap {
  int iteration = 0;  // 0 = after the initial gradecast round
  std::vector<Element> V;
  std::vector<std::vector<Element>> S;  // safe row per process id
  std::vector<GradeTriple> init_triples;  // iteration 0 only
  std::vector<SgcResult> results;         // iterations >= 1
};

// One process of the 3 + 3*ceil(log2 n) sub-round algorithm: an initial
// gradecast of inputs builds the safe rows, then each iteration the slave
// half of every group set-broadcasts its value set.
class LognProcess {
 public:
  LognProcess(int n, int f, int self, Element input);

  std::vector<Send> emit(int sub);  // global 1-based sub-round
  void deliver(int sub, const std::vector<Arrival>& arrivals);
  LognSnap finish_initial();        // after sub-round 3
  LognSnap finish_iteration();      // after each iteration's third sub-round

  const std::vector<Element>& value_set() const { return V_; }
  const GeneratingSet& safe_row(int j) const { return S_[j]; }
  Element output() const { return join_all(V_); }

 private:
  int n_, f_, self_;
  int iter_ = 0;  // current iteration, 1-based once sgc phases start
  Element input_;
  std::vector<Element> V_;
  std::vector<GeneratingSet> S_;
  std::vector<GeneratingSet> row_snap_;  // rows frozen for the iteration
  GcBank gcbank_;
  SgcBank sgcbank_;
};

}  // namespace bla
