#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bla/gradecast.hpp"
#include "bla/lattice.hpp"
#include "bla/setgradecast.hpp"
#include "bla/wire.hpp"

namespace bla {

// Label arithmetic. The nominal thresholds are k0 = n - f/2 stepped by
// +-f/2^(r+1) per iteration; to keep them exact, f is padded up to the power
// of two F2 = 2^L with L = ceil(log2 f) and every label is stored as the
// integer label * 2^(L+1). L is also the iteration count (0 when f <= 1).
int logf_levels(int f);
std::int64_t logf_scale(int f);                     // 2^(L+1)
std::int64_t logf_k0_scaled(int n, int f);          // (n - F2/2) scaled
std::int64_t logf_incr_scaled(int f, int r);        // (F2/2^(r+1)) scaled
// Labels a process following the +-schedule can hold entering iteration r
// (1-based; r = 1 yields just k0). Sorted ascending. Distinct label
// histories stay distinct, and child labels of distinct parents never
// collide; receive-side processing admits only these labels, so a forged
// label can never alias a live group's safe set.
std::vector<std::int64_t> logf_labels_at(int n, int f, int r);

struct LogfSnap {
  int iteration = 0;  // 0 = after the initial gradecast round
  std::vector<Element> V;
  std::int64_t label = 0;  // scaled, after this iteration's update
  bool master = false;     // classification taken this iteration
  std::vector<Element> T;  // union of accepted exchange sets
  std::map<std::int64_t, std::vector<Element>> F;  // safe map after update
  std::vector<GradeTriple> init_triples;  // iteration 0 only
  std::vector<SgcResult> results;         // iterations >= 1
};

// One process of the 3 + 4*ceil(log2 f) sub-round algorithm: an initial
// gradecast of inputs, then per iteration a set broadcast tagged with the
// sender's label (3 sub-rounds) plus one exchange sub-round whose accepted
// union sizes the master/slave classification.
class LogfProcess {
 public:
  LogfProcess(int n, int f, int self, Element input);

  std::vector<Send> emit(int sub);  // global 1-based sub-round
  void deliver(int sub, const std::vector<Arrival>& arrivals);
  LogfSnap finish_initial();    // after sub-round 3
  LogfSnap finish_iteration();  // after each iteration's fourth sub-round

  std::int64_t label() const { return l_; }
  const std::vector<Element>& value_set() const { return V_; }
  Element output() const { return join_all(V_); }
  // Current safe row for a label; null when the map has no such entry.
  const GeneratingSet* row_for_label(
      const std::optional<std::int64_t>& label) const;

 private:
  bool whitelisted(std::int64_t label) const;

  int n_, f_, self_;
  int levels_;
  std::int64_t scale_;
  int iter_ = 0;  // current iteration, 1-based once sgc phases start
  Element input_;
  std::vector<Element> V_;
  std::int64_t l_;
  std::map<std::int64_t, GeneratingSet> F_;
  std::map<std::int64_t, GeneratingSet> F_snap_;  // frozen for the iteration
  std::vector<std::int64_t> wl_;                  // live labels this iteration
  std::map<std::int64_t, GeneratingSet> u1_, u2_;  // per label, this iteration
  std::map<std::int64_t, std::vector<int>> claimants_;  // label -> leaders
  GeneratingSet T_;
  std::set<int> cx_seen_;
  GcBank gcbank_;
  SgcBank sgcbank_;
};

}  // namespace bla
