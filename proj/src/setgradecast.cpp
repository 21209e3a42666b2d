#include "bla/setgradecast.hpp"

#include <algorithm>

namespace bla {

SgcBank::SgcBank(int n, int f, int self) : n_(n), f_(f), self_(self) {
  begin(nullptr);
}

void SgcBank::begin(RowFn row) {
  row_ = std::move(row);
  lead_.assign(n_, std::nullopt);
  lead_label_.assign(n_, std::nullopt);
  row_resolved_.assign(n_, 0);
  irow_.assign(n_, nullptr);
  observed_.assign(n_, 0);
  t2_.assign(n_, Tally{});
  t3_.assign(n_, Tally{});
  seen1_.assign(n_, {});
  seen2_.assign(n_, {});
  seen3_.assign(n_, {});
}

Record SgcBank::lead(const std::vector<Element>& set,
                     std::optional<std::int64_t> label) const {
  return Record{RecKind::sgc, self_, 1, std::nullopt, set, label};
}

const GeneratingSet* SgcBank::row_for(int q) {
  if (!row_resolved_[q]) {
    // No leader record arrived; resolve with no label. Label-keyed resolvers
    // answer null, making the instance inert here, which is the intended
    // reading of an unattributable instance.
    irow_[q] = row_ ? row_(q, std::nullopt) : nullptr;
    row_resolved_[q] = 1;
  }
  return irow_[q];
}

std::vector<Record> SgcBank::echoes() const {
  std::vector<Record> out;
  for (int q = 0; q < n_; ++q)
    if (lead_[q])
      out.push_back(
          Record{RecKind::sgc, q, 2, std::nullopt, *lead_[q], lead_label_[q]});
  return out;
}

std::vector<Record> SgcBank::confirms() const {
  std::vector<Record> out;
  for (int q = 0; q < n_; ++q) {
    if (!observed_[q]) continue;
    std::vector<Element> confirmed;
    for (const auto& [v, senders] : t2_[q])
      if (senders.size() >= static_cast<std::size_t>(n_ - f_))
        confirmed.push_back(v);
    out.push_back(
        Record{RecKind::sgc, q, 3, std::nullopt, confirmed, lead_label_[q]});
  }
  return out;
}

void SgcBank::deliver(int sub, const std::vector<Arrival>& arrivals) {
  for (const Arrival& a : arrivals) {
    const Record& r = a.rec;
    if (r.kind != RecKind::sgc || r.sub != sub) continue;
    if (r.leader < 0 || r.leader >= n_) continue;
    const int q = r.leader;
    switch (sub) {
      case 1: {
        if (!seen1_[q].insert(a.from).second) break;
        if (a.from != q) break;
        observed_[q] = 1;
        lead_label_[q] = r.label;
        irow_[q] = row_ ? row_(q, r.label) : nullptr;
        row_resolved_[q] = 1;
        std::vector<Element> admitted;
        if (irow_[q])
          for (const Element& v : r.set)
            if (irow_[q]->contains(v)) admitted.push_back(v);
        lead_[q] = std::move(admitted);
        break;
      }
      case 2: {
        if (!seen2_[q].insert(a.from).second) break;
        observed_[q] = 1;
        const GeneratingSet* row = row_for(q);
        if (!row) break;
        for (const Element& v : r.set)
          if (row->contains(v)) t2_[q][v].insert(a.from);
        break;
      }
      case 3: {
        if (!seen3_[q].insert(a.from).second) break;
        observed_[q] = 1;
        const GeneratingSet* row = row_for(q);
        if (!row) break;
        for (const Element& v : r.set)
          if (row->contains(v)) t3_[q][v].insert(a.from);
        break;
      }
      default:
        break;
    }
  }
}

std::vector<SgcResult> SgcBank::results() const {
  std::vector<SgcResult> out;
  out.reserve(n_);
  for (int q = 0; q < n_; ++q) {
    SgcResult res;
    res.leader = q;
    res.observed = observed_[q] != 0;
    res.label = lead_label_[q];
    for (const auto& [v, senders] : t3_[q]) {
      const std::size_t cnt = senders.size();
      if (cnt >= static_cast<std::size_t>(n_ - f_))
        res.scored.push_back(ScoredValue{v, 2});
      else if (cnt >= static_cast<std::size_t>(f_ + 1))
        res.scored.push_back(ScoredValue{v, 1});
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace bla
