#include "bla/bla_logn.hpp"

#include <algorithm>

namespace bla {

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

int logn_iterations(int n) { return ceil_log2(n); }

int split_point(const IdInterval& g) { return g.lo + (g.size() + 1) / 2; }

IdInterval group_at(int n, int level, int id) {
  IdInterval g{0, n};
  for (int l = 0; l < level && g.size() > 1; ++l) {
    const int mid = split_point(g);
    if (id < mid)
      g.hi = mid;
    else
      g.lo = mid;
  }
  return g;
}

bool is_slave(const IdInterval& g, int id) {
  return g.size() >= 2 && id < split_point(g);
}

std::vector<IdInterval> groups_at_level(int n, int level) {
  std::vector<IdInterval> out;
  int id = 0;
  while (id < n) {
    IdInterval g = group_at(n, level, id);
    out.push_back(g);
    id = g.hi;
  }
  return out;
}

LognProcess::LognProcess(int n, int f, int self, Element input)
    : n_(n),
      f_(f),
      self_(self),
      input_(std::move(input)),
      S_(n),
      gcbank_(n, f, self),
      sgcbank_(n, f, self) {}

std::vector<Send> LognProcess::emit(int sub) {
  std::vector<Send> out;
  if (sub <= 3) {
    switch (sub) {
      case 1:
        gcbank_.begin(GcFilter{true, nullptr, nullptr});
        out.push_back(Send{kBroadcast, gcbank_.lead(input_)});
        break;
      case 2:
        for (Record& r : gcbank_.echoes()) out.push_back(Send{kBroadcast, r});
        break;
      case 3:
        for (Record& r : gcbank_.confirms())
          out.push_back(Send{kBroadcast, r});
        break;
    }
    return out;
  }
  const int phase = (sub - 4) % 3 + 1;
  switch (phase) {
    case 1: {
      ++iter_;
      row_snap_ = S_;
      sgcbank_.begin([this](int leader, const std::optional<std::int64_t>&) {
        return &row_snap_[leader];
      });
      if (is_slave(group_at(n_, iter_ - 1, self_), self_))
        out.push_back(Send{kBroadcast, sgcbank_.lead(V_, std::nullopt)});
      break;
    }
    case 2:
      for (Record& r : sgcbank_.echoes()) out.push_back(Send{kBroadcast, r});
      break;
    case 3:
      for (Record& r : sgcbank_.confirms())
        out.push_back(Send{kBroadcast, r});
      break;
  }
  return out;
}

void LognProcess::deliver(int sub, const std::vector<Arrival>& arrivals) {
  if (sub <= 3)
    gcbank_.deliver(sub, arrivals);
  else
    sgcbank_.deliver((sub - 4) % 3 + 1, arrivals);
}

LognSnap LognProcess::finish_initial() {
  LognSnap snap;
  snap.iteration = 0;
  snap.init_triples = gcbank_.grades();
  std::vector<Element> u1;
  for (const GradeTriple& t : snap.init_triples)
    if (t.score >= 1) u1.push_back(*t.value);
  GeneratingSet row(u1);
  for (int j = 0; j < n_; ++j) S_[j] = row;
  V_ = {input_};
  snap.V = V_;
  for (int j = 0; j < n_; ++j) snap.S.push_back(S_[j].members());
  return snap;
}

LognSnap LognProcess::finish_iteration() {
  LognSnap snap;
  snap.iteration = iter_;
  snap.results = sgcbank_.results();

  for (const IdInterval& g : groups_at_level(n_, iter_ - 1)) {
    const int mid = split_point(g);
    const bool splits = g.size() >= 2;
    // Values set-broadcast by the group's slave half, by score. Instances led
    // by non-slaves are ignored for this group: membership is positional.
    GeneratingSet u1, u2;
    if (splits) {
      for (int j = g.lo; j < mid; ++j)
        for (const ScoredValue& sv : snap.results[j].scored) {
          u1.insert(sv.value);
          if (sv.score == 2) u2.insert(sv.value);
        }
      for (int j = g.lo; j < mid; ++j) S_[j] = u2;
      for (int j = mid; j < g.hi; ++j) S_[j].insert_all(u1.members());
    }
    if (g.lo <= self_ && self_ < g.hi) {
      if (splits && self_ < mid) {
        V_ = u2.members();
      } else {
        // Master (or lone member of a singleton group): keep the current
        // value set and fold in everything the slave half broadcast with
        // score >= 1. Dropping the current set here would let a silent
        // Byzantine slave half erase a master's own input.
        GeneratingSet merged(V_);
        merged.insert_all(u1.members());
        V_ = merged.members();
      }
    }
  }

  snap.V = V_;
  for (int j = 0; j < n_; ++j) snap.S.push_back(S_[j].members());
  return snap;
}

}  // namespace bla
