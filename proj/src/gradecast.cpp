#include "bla/gradecast.hpp"

namespace bla {

std::optional<Element> tally_majority(const Tally& t) {
  std::optional<Element> best;
  std::size_t best_count = 0;
  for (const auto& [v, senders] : t) {
    // Map iteration is in canonical value order, so on ties the smallest
    // value is kept.
    if (senders.size() > best_count) {
      best = v;
      best_count = senders.size();
    }
  }
  return best;
}

std::optional<Element> confirm_choice(const Tally& t, int n, int f) {
  auto maj = tally_majority(t);
  if (!maj) return std::nullopt;
  if (t.at(*maj).size() < static_cast<std::size_t>(n - f)) return std::nullopt;
  return maj;
}

GradeTriple grade_from_tally(int leader, const Tally& t, int n, int f) {
  auto maj = tally_majority(t);
  if (maj) {
    const std::size_t cnt = t.at(*maj).size();
    if (cnt >= static_cast<std::size_t>(n - f))
      return GradeTriple{leader, maj, 2};
    if (cnt >= static_cast<std::size_t>(f + 1))
      return GradeTriple{leader, maj, 1};
  }
  return GradeTriple{leader, std::nullopt, 0};
}

GcBank::GcBank(int n, int f, int self) : n_(n), f_(f), self_(self) {
  begin(GcFilter{});
}

void GcBank::begin(const GcFilter& filt) {
  filt_ = filt;
  lead_.assign(n_, std::nullopt);
  t2_.assign(n_, Tally{});
  t3_.assign(n_, Tally{});
  seen1_.assign(n_, {});
  seen2_.assign(n_, {});
  seen3_.assign(n_, {});
}

Record GcBank::lead(const Element& v) const {
  return Record{RecKind::gc, self_, 1, v, {}, std::nullopt};
}

std::vector<Record> GcBank::echoes() const {
  std::vector<Record> out;
  for (int q = 0; q < n_; ++q)
    if (lead_[q])
      out.push_back(Record{RecKind::gc, q, 2, *lead_[q], {}, std::nullopt});
  return out;
}

std::vector<Record> GcBank::confirms() const {
  std::vector<Record> out;
  for (int q = 0; q < n_; ++q)
    if (auto maj = confirm_choice(t2_[q], n_, f_))
      out.push_back(Record{RecKind::gc, q, 3, *maj, {}, std::nullopt});
  return out;
}

bool GcBank::admit(int instance, int sender, const Element& v) const {
  return filt_.sender_ok(sender) && filt_.sender_ok(instance) &&
         filt_.value_ok(v);
}

void GcBank::deliver(int sub, const std::vector<Arrival>& arrivals) {
  for (const Arrival& a : arrivals) {
    const Record& r = a.rec;
    if (r.kind != RecKind::gc || r.sub != sub || !r.value) continue;
    if (r.leader < 0 || r.leader >= n_) continue;
    const int q = r.leader;
    switch (sub) {
      case 1:
        if (!seen1_[q].insert(a.from).second) break;
        if (a.from == q && admit(q, a.from, *r.value)) lead_[q] = *r.value;
        break;
      case 2:
        if (!seen2_[q].insert(a.from).second) break;
        if (admit(q, a.from, *r.value)) t2_[q][*r.value].insert(a.from);
        break;
      case 3:
        if (!seen3_[q].insert(a.from).second) break;
        if (admit(q, a.from, *r.value)) t3_[q][*r.value].insert(a.from);
        break;
      default:
        break;
    }
  }
}

std::vector<GradeTriple> GcBank::grades() const {
  std::vector<GradeTriple> out;
  out.reserve(n_);
  for (int q = 0; q < n_; ++q)
    out.push_back(grade_from_tally(q, t3_[q], n_, f_));
  return out;
}

}  // namespace bla
