#include "bla/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bla/gradecast.hpp"
#include "bla/lattice.hpp"
#include "bla/setgradecast.hpp"
#include "bla/wire.hpp"

namespace bla {
namespace {

constexpr int kN = 4;
constexpr int kF = 1;
constexpr int kByz = 3;
constexpr int kCorrect = 3;

const Element& elem_a() {
  static const Element e{std::vector<Tag>{Tag{0, 0}}};
  return e;
}
const Element& elem_b() {
  static const Element e{std::vector<Tag>{Tag{1, 0}}};
  return e;
}
const Element& elem_ab() {
  static const Element e{std::vector<Tag>{Tag{0, 0}, Tag{1, 0}}};
  return e;
}

// Per-slot choice for the faulty sender: 0 = stay silent toward that
// recipient, otherwise one of the three alphabet values / value sets.
std::optional<Element> gc_choice(int c) {
  switch (c) {
    case 1: return elem_a();
    case 2: return elem_b();
    case 3: return elem_ab();
    default: return std::nullopt;
  }
}

std::optional<std::vector<Element>> sgc_choice(int c) {
  switch (c) {
    case 1: return std::vector<Element>{elem_a()};
    case 2: return std::vector<Element>{elem_b()};
    case 3: return std::vector<Element>{elem_a(), elem_b()};
    default: return std::nullopt;
  }
}

void decode(long long idx, int slots, int* d) {
  for (int s = 0; s < slots; ++s) {
    d[s] = static_cast<int>(idx & 3);
    idx >>= 2;
  }
}

std::string grade_line(const std::vector<GradeTriple>& g) {
  std::ostringstream os;
  for (int p = 0; p < kCorrect; ++p)
    os << " p" << p << "=(" << (g[p].value ? g[p].value->str() : "none")
       << "," << g[p].score << ")";
  return os.str();
}

// Scores across correct processes for one instance must sit within one
// step of each other, and every scored delivery must agree on the value.
std::optional<std::string> grade_violation(
    const std::vector<GradeTriple>& g) {
  for (int p = 0; p < kCorrect; ++p)
    for (int q = p + 1; q < kCorrect; ++q) {
      if (g[p].score > 0 && g[q].score > 0 && g[p].value != g[q].value)
        return "delivered values differ:" + grade_line(g);
      if (std::abs(g[p].score - g[q].score) > 1)
        return "score gap above 1:" + grade_line(g);
    }
  return std::nullopt;
}

// The faulty process leads one gradecast instance and also chooses its echo
// and confirm payload per correct recipient. 9 slots of 4 choices.
std::optional<std::string> gc_byz_leader(long long idx, bool accept_all,
                                         const GeneratingSet* row) {
  int d[9];
  decode(idx, 9, d);
  std::vector<GcBank> banks;
  banks.reserve(kCorrect);
  for (int p = 0; p < kCorrect; ++p) {
    banks.emplace_back(kN, kF, p);
    banks.back().begin(GcFilter{accept_all, row, nullptr});
  }
  for (int p = 0; p < kCorrect; ++p)
    if (auto v = gc_choice(d[p]))
      banks[p].deliver(
          1, {Arrival{kByz, Record{RecKind::gc, kByz, 1, *v, {},
                                   std::nullopt}}});
  for (int sub = 2; sub <= 3; ++sub) {
    std::vector<std::vector<Arrival>> inbox(kCorrect);
    for (int p = 0; p < kCorrect; ++p) {
      const std::vector<Record> recs =
          sub == 2 ? banks[p].echoes() : banks[p].confirms();
      for (const Record& r : recs)
        for (int q = 0; q < kCorrect; ++q)
          inbox[q].push_back(Arrival{p, r});
    }
    for (int q = 0; q < kCorrect; ++q) {
      if (auto v = gc_choice(d[3 * (sub - 1) + q]))
        inbox[q].push_back(Arrival{kByz, Record{RecKind::gc, kByz, sub, *v,
                                                {}, std::nullopt}});
      banks[q].deliver(sub, inbox[q]);
    }
  }
  std::vector<GradeTriple> g;
  for (int p = 0; p < kCorrect; ++p) g.push_back(banks[p].grades()[kByz]);
  return grade_violation(g);
}

// Correct leader, faulty echoer/confirmer. 6 slots of 4 choices.
std::optional<std::string> gc_byz_echoer(long long idx,
                                         const Element& input) {
  int d[6];
  decode(idx, 6, d);
  std::vector<GcBank> banks;
  banks.reserve(kCorrect);
  for (int p = 0; p < kCorrect; ++p) {
    banks.emplace_back(kN, kF, p);
    banks.back().begin(GcFilter{true, nullptr, nullptr});
  }
  const Record lead = banks[0].lead(input);
  for (int p = 0; p < kCorrect; ++p) banks[p].deliver(1, {Arrival{0, lead}});
  for (int sub = 2; sub <= 3; ++sub) {
    std::vector<std::vector<Arrival>> inbox(kCorrect);
    for (int p = 0; p < kCorrect; ++p) {
      const std::vector<Record> recs =
          sub == 2 ? banks[p].echoes() : banks[p].confirms();
      for (const Record& r : recs)
        for (int q = 0; q < kCorrect; ++q)
          inbox[q].push_back(Arrival{p, r});
    }
    for (int q = 0; q < kCorrect; ++q) {
      if (auto v = gc_choice(d[3 * (sub - 2) + q]))
        inbox[q].push_back(Arrival{kByz, Record{RecKind::gc, 0, sub, *v, {},
                                                std::nullopt}});
      banks[q].deliver(sub, inbox[q]);
    }
  }
  std::vector<GradeTriple> g;
  for (int p = 0; p < kCorrect; ++p) g.push_back(banks[p].grades()[0]);
  // Delivery for a correct leader: value intact, score 2 everywhere.
  for (int p = 0; p < kCorrect; ++p)
    if (!g[p].value || *g[p].value != input || g[p].score != 2)
      return "correct leader degraded:" + grade_line(g);
  return grade_violation(g);
}

std::map<Element, int> sgc_scores(const SgcResult& r) {
  std::map<Element, int> out;
  for (const ScoredValue& sv : r.scored) out[sv.value] = sv.score;
  return out;
}

std::string sgc_score_line(const std::vector<SgcResult>& rs,
                           const Element& v) {
  std::ostringstream os;
  os << " value " << v.str() << ":";
  for (int p = 0; p < kCorrect; ++p) {
    const auto m = sgc_scores(rs[p]);
    const auto it = m.find(v);
    os << " p" << p << "=" << (it == m.end() ? 0 : it->second);
  }
  return os.str();
}

std::optional<std::string> sgc_gap_violation(
    const std::vector<SgcResult>& rs) {
  for (const Element& v : {elem_a(), elem_b(), elem_ab(), Element{}}) {
    int lo = 2, hi = 0;
    for (int p = 0; p < kCorrect; ++p) {
      const auto m = sgc_scores(rs[p]);
      const auto it = m.find(v);
      const int score = it == m.end() ? 0 : it->second;
      lo = std::min(lo, score);
      hi = std::max(hi, score);
    }
    if (hi - lo > 1) return "per-value score gap above 1:" +
                            sgc_score_line(rs, v);
  }
  return std::nullopt;
}

// Faulty leader of one set-broadcast instance, free choice of set toward
// each recipient in every sub-round. 9 slots of 4 choices.
std::optional<std::string> sgc_byz_leader(long long idx,
                                          const GeneratingSet& row) {
  int d[9];
  decode(idx, 9, d);
  auto rowfn = [&row](int, const std::optional<std::int64_t>&) {
    return &row;
  };
  std::vector<SgcBank> banks;
  banks.reserve(kCorrect);
  for (int p = 0; p < kCorrect; ++p) {
    banks.emplace_back(kN, kF, p);
    banks.back().begin(rowfn);
  }
  for (int p = 0; p < kCorrect; ++p)
    if (auto set = sgc_choice(d[p]))
      banks[p].deliver(1, {Arrival{kByz, Record{RecKind::sgc, kByz, 1,
                                                std::nullopt, *set,
                                                std::nullopt}}});
  for (int sub = 2; sub <= 3; ++sub) {
    std::vector<std::vector<Arrival>> inbox(kCorrect);
    for (int p = 0; p < kCorrect; ++p) {
      const std::vector<Record> recs =
          sub == 2 ? banks[p].echoes() : banks[p].confirms();
      for (const Record& r : recs)
        for (int q = 0; q < kCorrect; ++q)
          inbox[q].push_back(Arrival{p, r});
    }
    for (int q = 0; q < kCorrect; ++q) {
      if (auto set = sgc_choice(d[3 * (sub - 1) + q]))
        inbox[q].push_back(Arrival{kByz, Record{RecKind::sgc, kByz, sub,
                                                std::nullopt, *set,
                                                std::nullopt}});
      banks[q].deliver(sub, inbox[q]);
    }
  }
  std::vector<SgcResult> rs;
  for (int p = 0; p < kCorrect; ++p) rs.push_back(banks[p].results()[kByz]);
  return sgc_gap_violation(rs);
}

// Correct set-broadcast leader, faulty echoer/confirmer. 6 slots. `row` is
// shared by all correct processes; values of the leader set admitted by it
// must score 2 everywhere, values it excludes must score 0 everywhere.
std::optional<std::string> sgc_byz_echoer(long long idx,
                                          const std::vector<Element>& led,
                                          const GeneratingSet& row) {
  int d[6];
  decode(idx, 6, d);
  auto rowfn = [&row](int, const std::optional<std::int64_t>&) {
    return &row;
  };
  std::vector<SgcBank> banks;
  banks.reserve(kCorrect);
  for (int p = 0; p < kCorrect; ++p) {
    banks.emplace_back(kN, kF, p);
    banks.back().begin(rowfn);
  }
  const Record lead = banks[0].lead(led, std::nullopt);
  for (int p = 0; p < kCorrect; ++p) banks[p].deliver(1, {Arrival{0, lead}});
  for (int sub = 2; sub <= 3; ++sub) {
    std::vector<std::vector<Arrival>> inbox(kCorrect);
    for (int p = 0; p < kCorrect; ++p) {
      const std::vector<Record> recs =
          sub == 2 ? banks[p].echoes() : banks[p].confirms();
      for (const Record& r : recs)
        for (int q = 0; q < kCorrect; ++q)
          inbox[q].push_back(Arrival{p, r});
    }
    for (int q = 0; q < kCorrect; ++q) {
      if (auto set = sgc_choice(d[3 * (sub - 2) + q]))
        inbox[q].push_back(Arrival{kByz, Record{RecKind::sgc, 0, sub,
                                                std::nullopt, *set,
                                                std::nullopt}});
      banks[q].deliver(sub, inbox[q]);
    }
  }
  std::vector<SgcResult> rs;
  for (int p = 0; p < kCorrect; ++p) rs.push_back(banks[p].results()[0]);
  for (const Element& v : led) {
    const bool admitted = row.contains(v);
    for (int p = 0; p < kCorrect; ++p) {
      const auto m = sgc_scores(rs[p]);
      const auto it = m.find(v);
      const int score = it == m.end() ? 0 : it->second;
      if (admitted && score != 2)
        return "admitted value of a correct leader scored below 2:" +
               sgc_score_line(rs, v);
      if (!admitted && score != 0)
        return "excluded value scored above 0:" + sgc_score_line(rs, v);
    }
  }
  return sgc_gap_violation(rs);
}

struct Scenario {
  std::string name;
  long long count = 0;
  std::function<std::optional<std::string>(long long)> run;
};

std::vector<Scenario> scenarios() {
  static const GeneratingSet row_a{std::vector<Element>{elem_a()}};
  static const GeneratingSet row_full{
      std::vector<Element>{elem_a(), elem_b(), elem_ab()}};
  static const GeneratingSet row_no_b{
      std::vector<Element>{elem_a(), elem_ab()}};
  std::vector<Scenario> out;
  out.push_back({"gc faulty leader, open admission", 1LL << 18,
                 [](long long i) { return gc_byz_leader(i, true, nullptr); }});
  out.push_back({"gc faulty leader, restricted admission", 1LL << 18,
                 [](long long i) { return gc_byz_leader(i, false, &row_a); }});
  for (const Element& v : {elem_a(), elem_b(), elem_ab()})
    out.push_back({"gc faulty echoer, leader value " + v.str(), 1LL << 12,
                   [v](long long i) { return gc_byz_echoer(i, v); }});
  out.push_back({"sgc faulty leader, full row", 1LL << 18,
                 [](long long i) { return sgc_byz_leader(i, row_full); }});
  const std::vector<std::vector<Element>> led_sets{
      {}, {elem_a()}, {elem_b()}, {elem_a(), elem_b()}};
  for (const std::vector<Element>& led : led_sets)
    out.push_back({"sgc faulty echoer, " + std::to_string(led.size()) +
                       "-value leader set",
                   1LL << 12, [led](long long i) {
                     return sgc_byz_echoer(i, led, row_full);
                   }});
  out.push_back({"sgc faulty echoer, row excludes one leader value",
                 1LL << 12, [](long long i) {
                   return sgc_byz_echoer(i, {elem_a(), elem_b()}, row_no_b);
                 }});
  return out;
}

}  // namespace

SearchStats run_search(bool parallel) {
  SearchStats stats;
  for (const Scenario& sc : scenarios()) {
    stats.transcripts += sc.count;
    long long best_idx = -1;
    std::string best_witness;
    long long found = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long long i = 0; i < sc.count; ++i) {
      const std::optional<std::string> w = sc.run(i);
      if (!w) continue;
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        ++found;
        if (best_idx < 0 || i < best_idx) {
          best_idx = i;
          best_witness = *w;
        }
      }
    }
    stats.violations += found;
    if (best_idx >= 0 && stats.first_witness.empty()) {
      stats.first_witness = sc.name + " case " + std::to_string(best_idx) +
                            ": " + best_witness;
    }
  }
  (void)parallel;
  return stats;
}

}  // namespace bla
