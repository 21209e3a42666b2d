#include "bla/bla_logf.hpp"

#include <algorithm>
#include <cassert>

namespace bla {

int logf_levels(int f) {
  int l = 0;
  while ((1 << l) < f) ++l;
  return l;
}

std::int64_t logf_scale(int f) {
  return std::int64_t{1} << (logf_levels(f) + 1);
}

std::int64_t logf_k0_scaled(int n, int f) {
  const int L = logf_levels(f);
  const std::int64_t f2 = std::int64_t{1} << L;
  return (std::int64_t{1} << L) * (2 * n - f2);
}

std::int64_t logf_incr_scaled(int f, int r) {
  return std::int64_t{1} << (2 * logf_levels(f) - r);
}

std::vector<std::int64_t> logf_labels_at(int n, int f, int r) {
  std::vector<std::int64_t> out{logf_k0_scaled(n, f)};
  for (int s = 1; s < r; ++s) {
    const std::int64_t d = logf_incr_scaled(f, s);
    std::vector<std::int64_t> next;
    next.reserve(2 * out.size());
    for (std::int64_t l : out) {
      next.push_back(l - d);
      next.push_back(l + d);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LogfProcess::LogfProcess(int n, int f, int self, Element input)
    : n_(n),
      f_(f),
      self_(self),
      levels_(logf_levels(f)),
      scale_(logf_scale(f)),
      input_(std::move(input)),
      l_(logf_k0_scaled(n, f)),
      gcbank_(n, f, self),
      sgcbank_(n, f, self) {}

bool LogfProcess::whitelisted(std::int64_t label) const {
  return std::binary_search(wl_.begin(), wl_.end(), label);
}

const GeneratingSet* LogfProcess::row_for_label(
    const std::optional<std::int64_t>& label) const {
  if (!label) return nullptr;
  auto it = F_.find(*label);
  return it == F_.end() ? nullptr : &it->second;
}

std::vector<Send> LogfProcess::emit(int sub) {
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
  const int phase = (sub - 4) % 4 + 1;
  switch (phase) {
    case 1:
      ++iter_;
      F_snap_ = F_;
      wl_ = logf_labels_at(n_, f_, iter_);
      u1_.clear();
      u2_.clear();
      claimants_.clear();
      T_ = GeneratingSet{};
      cx_seen_.clear();
      sgcbank_.begin([this](int, const std::optional<std::int64_t>& label)
                         -> const GeneratingSet* {
        if (!label || !whitelisted(*label)) return nullptr;
        auto it = F_snap_.find(*label);
        return it == F_snap_.end() ? nullptr : &it->second;
      });
      out.push_back(Send{kBroadcast, sgcbank_.lead(V_, l_)});
      break;
    case 2:
      for (Record& r : sgcbank_.echoes()) out.push_back(Send{kBroadcast, r});
      break;
    case 3:
      for (Record& r : sgcbank_.confirms())
        out.push_back(Send{kBroadcast, r});
      break;
    case 4: {
      // Fold the iteration's scored values per live label, then report the
      // score-2 set for each label back to that label's claimants.
      for (const SgcResult& res : sgcbank_.results()) {
        if (!res.observed || !res.label || !whitelisted(*res.label)) continue;
        const std::int64_t k = *res.label;
        claimants_[k].push_back(res.leader);
        for (const ScoredValue& sv : res.scored) {
          u1_[k].insert(sv.value);
          if (sv.score == 2) u2_[k].insert(sv.value);
        }
      }
      for (const auto& [k, leaders] : claimants_) {
        const GeneratingSet& r = u2_[k];
        for (int j : leaders) {
          Record rec;
          rec.kind = RecKind::cx;
          rec.leader = self_;
          rec.sub = 4;
          rec.set = r.members();
          rec.label = k;
          out.push_back(Send{j, rec});
        }
      }
      break;
    }
  }
  return out;
}

void LogfProcess::deliver(int sub, const std::vector<Arrival>& arrivals) {
  if (sub <= 3) {
    gcbank_.deliver(sub, arrivals);
    return;
  }
  const int phase = (sub - 4) % 4 + 1;
  if (phase <= 3) {
    sgcbank_.deliver(phase, arrivals);
    return;
  }
  const GeneratingSet& own_u1 = u1_[l_];
  for (const Arrival& a : arrivals) {
    if (a.rec.kind != RecKind::cx) continue;
    if (!a.rec.label || *a.rec.label != l_) continue;
    if (!cx_seen_.insert(a.from).second) continue;
    const bool ok = std::all_of(
        a.rec.set.begin(), a.rec.set.end(),
        [&](const Element& v) { return own_u1.contains(v); });
    if (ok) T_.insert_all(a.rec.set);
  }
}

LogfSnap LogfProcess::finish_initial() {
  LogfSnap snap;
  snap.iteration = 0;
  snap.init_triples = gcbank_.grades();
  GeneratingSet f0;
  std::vector<Element> v;
  for (const GradeTriple& t : snap.init_triples) {
    if (t.score >= 1) f0.insert(*t.value);
    if (t.score == 2) v.push_back(*t.value);
  }
  F_[l_] = f0;
  V_ = GeneratingSet(v).members();
  snap.V = V_;
  snap.label = l_;
  for (const auto& [k, row] : F_) snap.F[k] = row.members();
  return snap;
}

LogfSnap LogfProcess::finish_iteration() {
  LogfSnap snap;
  snap.iteration = iter_;
  snap.results = sgcbank_.results();

  const std::int64_t d = logf_incr_scaled(f_, iter_);
  for (const auto& [k, leaders] : claimants_) {
    // Live labels never sit closer than 4 increments apart and child labels
    // never revisit an ancestor, so both slots written here are fresh.
    assert(F_.find(k + d) == F_.end() && F_.find(k - d) == F_.end());
    GeneratingSet master_row = u1_[k];
    auto parent = F_snap_.find(k);
    if (parent != F_snap_.end()) master_row.insert_all(parent->second.members());
    F_[k + d] = master_row;
    F_[k - d] = u2_[k];
  }

  snap.T = T_.members();
  const bool master =
      static_cast<std::int64_t>(T_.members().size()) * scale_ > l_;
  snap.master = master;
  V_ = (master ? u1_[l_] : u2_[l_]).members();
  l_ += master ? d : -d;
  snap.label = l_;

  snap.V = V_;
  for (const auto& [k, row] : F_) snap.F[k] = row.members();
  return snap;
}

}  // namespace bla
