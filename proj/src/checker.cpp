#include "bla/checker.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace bla {
namespace {

Verdict ok(const char* name) { return Verdict{name, true, ""}; }

Verdict bad(const char* name, const std::string& witness) {
  return Verdict{name, false, witness};
}

// Prefix for every witness: enough to replay the run exactly.
std::string replay(const Transcript& tr) {
  std::ostringstream os;
  os << "algorithm=" << algo_name(tr.cfg.algorithm) << " adversary="
     << tr.cfg.adversary << " n=" << tr.cfg.n << " f=" << tr.cfg.f
     << " t=" << tr.cfg.t() << " seed=" << tr.cfg.seed << " | ";
  return os.str();
}

int ceil_sqrt(int x) {
  int s = 0;
  while (s * s < x) ++s;
  return s;
}

bool in(const std::vector<Element>& xs, const Element& e) {
  return std::find(xs.begin(), xs.end(), e) != xs.end();
}

std::set<Element> as_set(const std::vector<Element>& xs) {
  return {xs.begin(), xs.end()};
}

// The size-window checks below count distinct values as a proxy for distinct
// contributors, which only works when no two correct inputs coincide.
bool distinct_correct_inputs(const Transcript& tr) {
  std::set<Element> seen;
  for (int i : tr.correct)
    if (!seen.insert(tr.cfg.inputs[i]).second) return false;
  return true;
}

// Union of the correct processes' safe sets after round boundary b.
std::vector<Element> sq_safe_union(const Transcript& tr, int b) {
  GeneratingSet u;
  for (int i : tr.correct) u.insert_all(tr.sq[b][i].sv);
  return u.members();
}

Element sq_joined_value(const Transcript& tr, int b) {
  std::vector<Element> vs;
  for (int i : tr.correct) vs.push_back(tr.sq[b][i].v);
  return join_all(vs);
}

// Union over correct processes of the safe row for id j at boundary b.
std::set<Element> ln_row_union(const Transcript& tr, int b, int j) {
  std::set<Element> out;
  for (int i : tr.correct) {
    const std::vector<Element>& row = tr.ln[b][i].S[j];
    out.insert(row.begin(), row.end());
  }
  return out;
}

std::set<Element> ln_group_safe(const Transcript& tr, int b, int lo, int hi) {
  std::set<Element> out;
  for (int j = lo; j < hi; ++j) {
    std::set<Element> row = ln_row_union(tr, b, j);
    out.insert(row.begin(), row.end());
  }
  return out;
}

// Union over correct processes of the safe row for label k at boundary b.
std::set<Element> lf_label_safe(const Transcript& tr, int b, std::int64_t k) {
  std::set<Element> out;
  for (int i : tr.correct) {
    auto it = tr.lf[b][i].F.find(k);
    if (it != tr.lf[b][i].F.end()) out.insert(it->second.begin(),
                                              it->second.end());
  }
  return out;
}

std::vector<std::int64_t> lf_live_labels(const Transcript& tr, int b) {
  std::set<std::int64_t> ks;
  for (int i : tr.correct) ks.insert(tr.lf[b][i].label);
  return {ks.begin(), ks.end()};
}

Verdict persists_logn(const Transcript& tr) {
  const char* name = "correct_value_persists";
  const int last = static_cast<int>(tr.ln.size()) - 1;
  for (int b = 0; b < last; ++b)
    for (int j : tr.correct)
      for (const Element& v : tr.ln[b][j].V) {
        bool everywhere = true;
        for (int i : tr.correct)
          if (!in(tr.ln[b][i].S[j], v)) {
            everywhere = false;
            break;
          }
        if (!everywhere) continue;
        if (!in(tr.ln[b + 1][j].V, v))
          return bad(name, replay(tr) + "boundary " + std::to_string(b + 1) +
                               ": id " + std::to_string(j) + " dropped " +
                               v.str() + " from its value set");
        for (int i : tr.correct)
          if (!in(tr.ln[b + 1][i].S[j], v))
            return bad(name, replay(tr) + "boundary " +
                                 std::to_string(b + 1) + ": id " +
                                 std::to_string(i) + " dropped " + v.str() +
                                 " from its safe row for id " +
                                 std::to_string(j));
      }
  return ok(name);
}

Verdict persists_logf(const Transcript& tr) {
  const char* name = "correct_value_persists";
  const int last = static_cast<int>(tr.lf.size()) - 1;
  for (int b = 0; b < last; ++b)
    for (int j : tr.correct) {
      const std::int64_t k = tr.lf[b][j].label;
      const std::int64_t k2 = tr.lf[b + 1][j].label;
      for (const Element& v : tr.lf[b][j].V) {
        bool everywhere = true;
        for (int i : tr.correct) {
          auto it = tr.lf[b][i].F.find(k);
          if (it == tr.lf[b][i].F.end() || !in(it->second, v)) {
            everywhere = false;
            break;
          }
        }
        if (!everywhere) continue;
        if (!in(tr.lf[b + 1][j].V, v))
          return bad(name, replay(tr) + "boundary " + std::to_string(b + 1) +
                               ": id " + std::to_string(j) + " dropped " +
                               v.str() + " from its value set");
        for (int i : tr.correct) {
          auto it = tr.lf[b + 1][i].F.find(k2);
          if (it == tr.lf[b + 1][i].F.end() || !in(it->second, v))
            return bad(name, replay(tr) + "boundary " +
                                 std::to_string(b + 1) + ": id " +
                                 std::to_string(i) + " lost " + v.str() +
                                 " from the row for label " +
                                 std::to_string(k2));
        }
      }
    }
  return ok(name);
}

}  // namespace

Verdict check_comparability(const Transcript& tr) {
  const char* name = "comparability";
  for (std::size_t a = 0; a < tr.correct.size(); ++a)
    for (std::size_t b = a + 1; b < tr.correct.size(); ++b) {
      const int i = tr.correct[a], j = tr.correct[b];
      if (!tr.outputs[i] || !tr.outputs[j]) continue;
      if (!comparable(*tr.outputs[i], *tr.outputs[j]))
        return bad(name, replay(tr) + "incomparable outputs: id " +
                             std::to_string(i) + " -> " +
                             tr.outputs[i]->str() + ", id " +
                             std::to_string(j) + " -> " +
                             tr.outputs[j]->str());
    }
  return ok(name);
}

Verdict check_downward(const Transcript& tr) {
  const char* name = "downward_validity";
  for (int i : tr.correct) {
    if (!tr.outputs[i]) continue;
    if (!leq(tr.cfg.inputs[i], *tr.outputs[i]))
      return bad(name, replay(tr) + "id " + std::to_string(i) + ": input " +
                           tr.cfg.inputs[i].str() + " not below output " +
                           tr.outputs[i]->str());
  }
  return ok(name);
}

Verdict check_upward(const Transcript& tr) {
  const char* name = "upward_validity";
  std::set<Element> bvals;
  for (const auto& [id, vals] : tr.recorded_byz)
    bvals.insert(vals.begin(), vals.end());
  if (static_cast<int>(bvals.size()) > tr.cfg.t())
    return bad(name, replay(tr) + std::to_string(bvals.size()) +
                         " distinct Byzantine values recorded, more than t=" +
                         std::to_string(tr.cfg.t()));
  std::vector<Element> parts;
  for (int i : tr.correct) parts.push_back(tr.cfg.inputs[i]);
  parts.insert(parts.end(), bvals.begin(), bvals.end());
  const Element bound = join_all(parts);
  std::vector<Element> outs;
  for (int i : tr.correct)
    if (tr.outputs[i]) outs.push_back(*tr.outputs[i]);
  const Element joined = join_all(outs);
  if (!leq(joined, bound))
    return bad(name, replay(tr) + "join of outputs " + joined.str() +
                         " exceeds admissible bound " + bound.str());
  return ok(name);
}

Verdict check_at_most_one(const Transcript& tr) {
  const char* name = "at_most_one";
  auto scan = [&](int boundary,
                  auto triples_of) -> std::optional<std::string> {
    for (int p = 0; p < tr.cfg.n; ++p) {
      std::set<Element> vals;
      for (int i : tr.correct) {
        const GradeTriple& g = triples_of(i)[p];
        if (g.score >= 1 && g.value) vals.insert(*g.value);
      }
      if (vals.size() > 1) {
        std::ostringstream os;
        os << replay(tr) << "boundary " << boundary << ": leader "
           << p << " planted " << vals.size() << " distinct values: ";
        for (const Element& v : vals) os << v.str() << " ";
        return os.str();
      }
    }
    return std::nullopt;
  };
  std::optional<std::string> w;
  switch (tr.cfg.algorithm) {
    case AlgoKind::sqrtf:
      for (std::size_t b = 0; b < tr.sq.size() && !w; ++b)
        w = scan(static_cast<int>(b), [&](int i) -> const auto& {
          return tr.sq[b][i].triples;
        });
      break;
    case AlgoKind::logn:
      w = scan(0, [&](int i) -> const auto& { return tr.ln[0][i].init_triples; });
      break;
    case AlgoKind::logf:
      w = scan(0, [&](int i) -> const auto& { return tr.lf[0][i].init_triples; });
      break;
  }
  return w ? bad(name, *w) : ok(name);
}

Verdict check_round_bound(const Transcript& tr) {
  const char* name = "round_bound";
  const int n = tr.cfg.n, f = tr.cfg.f, t = tr.cfg.t();
  if (tr.cfg.algorithm == AlgoKind::sqrtf) {
    const int h = tr.cfg.universe().height();
    const int cap_outer = sqrtf_round_cap(h, f);
    if (tr.sub_rounds != 3 * tr.outer_rounds)
      return bad(name, replay(tr) + "sub-round count " +
                           std::to_string(tr.sub_rounds) +
                           " is not 3x the outer rounds");
    // Worst-case bound plus the early-stopping bound from the actual fault
    // count; with t = 0 the termination rule still needs 3 rounds.
    const int early = std::max(3, 2 * ceil_sqrt(t) + 2);
    const int bound = std::min(cap_outer, early);
    if (tr.outer_rounds > bound)
      return bad(name, replay(tr) + "ran " + std::to_string(tr.outer_rounds) +
                           " outer rounds, bound " + std::to_string(bound));
    int max_term = 0;
    for (int i : tr.correct) {
      if (!tr.decision_rounds[i])
        return bad(name, replay(tr) + "id " + std::to_string(i) +
                             " never decided");
      if (*tr.decision_rounds[i] > tr.term_rounds[i])
        return bad(name, replay(tr) + "id " + std::to_string(i) +
                             " decided at round " +
                             std::to_string(*tr.decision_rounds[i]) +
                             ", after its termination round " +
                             std::to_string(tr.term_rounds[i]));
      max_term = std::max(max_term, tr.term_rounds[i]);
    }
    if (tr.outer_rounds != max_term)
      return bad(name, replay(tr) + "run length " +
                           std::to_string(tr.outer_rounds) +
                           " differs from the latest termination round " +
                           std::to_string(max_term));
    return ok(name);
  }
  const int want = tr.cfg.algorithm == AlgoKind::logn
                       ? 3 + 3 * logn_iterations(n)
                       : 3 + 4 * logf_levels(f);
  const int boundaries = tr.cfg.algorithm == AlgoKind::logn
                             ? 1 + logn_iterations(n)
                             : 1 + logf_levels(f);
  if (tr.sub_rounds != want)
    return bad(name, replay(tr) + "took " + std::to_string(tr.sub_rounds) +
                         " sub-rounds, expected exactly " +
                         std::to_string(want));
  if (tr.outer_rounds != boundaries)
    return bad(name, replay(tr) + "saw " + std::to_string(tr.outer_rounds) +
                         " boundaries, expected " +
                         std::to_string(boundaries));
  return ok(name);
}

Verdict check_message_bound(const Transcript& tr) {
  const char* name = "message_bound";
  const int nn = tr.cfg.n * tr.cfg.n;
  const std::size_t subs = static_cast<std::size_t>(tr.sub_rounds);
  if (tr.env_total.size() != subs || tr.env_self.size() != subs ||
      tr.env_correct.size() != subs)
    return bad(name, replay(tr) + "envelope counters missing sub-rounds");
  long long total = 0;
  for (std::size_t s = 0; s < subs; ++s) {
    if (tr.env_correct[s] > nn)
      return bad(name, replay(tr) + "sub-round " + std::to_string(s + 1) +
                           ": " + std::to_string(tr.env_correct[s]) +
                           " correct-sender envelopes, above n^2=" +
                           std::to_string(nn));
    if (tr.env_total[s] > nn || tr.env_correct[s] > tr.env_total[s] ||
        tr.env_self[s] > tr.env_total[s])
      return bad(name, replay(tr) + "sub-round " + std::to_string(s + 1) +
                           ": inconsistent envelope counts");
    total += tr.env_total[s];
  }
  if (total > static_cast<long long>(subs) * nn)
    return bad(name, replay(tr) + "total envelopes " + std::to_string(total) +
                         " above " + std::to_string(subs) + "*n^2");
  return ok(name);
}

Verdict check_output_present(const Transcript& tr) {
  const char* name = "output_present";
  for (int i : tr.correct) {
    if (!tr.outputs[i])
      return bad(name, replay(tr) + "id " + std::to_string(i) +
                           " produced no output");
    if (tr.cfg.algorithm == AlgoKind::sqrtf && !tr.decision_rounds[i])
      return bad(name, replay(tr) + "id " + std::to_string(i) +
                           " reached its termination round undecided");
  }
  return ok(name);
}

Verdict check_value_in_safe_lattice(const Transcript& tr) {
  const char* name = "value_in_safe_lattice";
  for (std::size_t b = 0; b < tr.sq.size(); ++b) {
    for (int j : tr.correct) {
      const GeneratingSet row(tr.sq[b][j].sv);
      for (int i : tr.correct)
        if (!member_of_generated(row, tr.sq[b][i].v))
          return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                               ": value " + tr.sq[b][i].v.str() + " of id " +
                               std::to_string(i) +
                               " outside the family generated by id " +
                               std::to_string(j) + "'s safe set " +
                               row.str());
    }
    const Element top = join_all(sq_safe_union(tr, static_cast<int>(b)));
    const Element joined = sq_joined_value(tr, static_cast<int>(b));
    if (!leq(joined, top))
      return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                           ": joined correct value " + joined.str() +
                           " above the safe union " + top.str());
  }
  return ok(name);
}

Verdict check_value_monotone(const Transcript& tr) {
  const char* name = "value_monotone";
  for (std::size_t b = 0; b < tr.sq.size(); ++b)
    for (int i : tr.correct) {
      const SqrtfSnap& s = tr.sq[b][i];
      if (s.decided_at) continue;  // undecided processes must strictly grow
      if (!(leq(s.v_sent, s.v) && s.v_sent != s.v))
        return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                             ": undecided id " + std::to_string(i) +
                             " went from " + s.v_sent.str() + " to " +
                             s.v.str() + " without strict growth");
    }
  return ok(name);
}

Verdict check_safe_lattice_shrinks(const Transcript& tr) {
  const char* name = "safe_lattice_shrinks";
  for (std::size_t b = 1; b < tr.sq.size(); ++b) {
    const GeneratingSet prev(sq_safe_union(tr, static_cast<int>(b) - 1));
    for (const Element& m : sq_safe_union(tr, static_cast<int>(b)))
      if (!member_of_generated(prev, m))
        return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                             ": safe value " + m.str() +
                             " not generated by the previous round's union " +
                             prev.str());
  }
  return ok(name);
}

Verdict check_bad_set_sound(const Transcript& tr) {
  const char* name = "bad_set_sound";
  for (std::size_t b = 0; b < tr.sq.size(); ++b)
    for (int i : tr.correct)
      for (int id : tr.sq[b][i].bad)
        if (tr.byz.count(id) == 0)
          return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                               ": id " + std::to_string(i) +
                               " blacklisted correct id " +
                               std::to_string(id));
  return ok(name);
}

Verdict check_bad_ignored(const Transcript& tr) {
  const char* name = "bad_ignored";
  for (std::size_t b = 1; b < tr.sq.size(); ++b) {
    std::set<int> inter = tr.sq[b - 1][tr.correct.front()].bad;
    for (int i : tr.correct) {
      std::set<int> next;
      for (int id : inter)
        if (tr.sq[b - 1][i].bad.count(id)) next.insert(id);
      inter = std::move(next);
    }
    for (int p : inter)
      for (int i : tr.correct)
        if (tr.sq[b][i].triples[p].score != 0)
          return bad(name, replay(tr) + "round " + std::to_string(b + 1) +
                               ": id " + std::to_string(i) +
                               " scored universally blacklisted leader " +
                               std::to_string(p) + " with " +
                               std::to_string(tr.sq[b][i].triples[p].score));
  }
  return ok(name);
}

Verdict check_decide_within_two(const Transcript& tr) {
  const char* name = "decide_within_two";
  for (std::size_t b = 0; b < tr.sq.size(); ++b) {
    const int r = static_cast<int>(b) + 1;
    if (sq_joined_value(tr, static_cast<int>(b)) !=
        join_all(sq_safe_union(tr, static_cast<int>(b))))
      continue;
    for (int i : tr.correct) {
      const std::optional<int>& dec = tr.decision_rounds[i];
      if (!dec || *dec > r + 2)
        return bad(name, replay(tr) + "values met the safe union at round " +
                             std::to_string(r) + " but id " +
                             std::to_string(i) + " decided at " +
                             (dec ? std::to_string(*dec) : "never"));
    }
  }
  return ok(name);
}

Verdict check_group_safe_nesting(const Transcript& tr) {
  const char* name = "group_safe_nesting";
  const int iters = static_cast<int>(tr.ln.size()) - 1;
  for (int r = 1; r <= iters; ++r)
    for (const IdInterval& g : groups_at_level(tr.cfg.n, r - 1)) {
      const std::set<Element> parent = ln_group_safe(tr, r - 1, g.lo, g.hi);
      const int mid = split_point(g);
      if (g.size() >= 2) {
        for (const Element& v : ln_group_safe(tr, r, g.lo, mid))
          if (!parent.count(v))
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": slave-half safe value " + v.str() +
                                 " escaped the parent group [" +
                                 std::to_string(g.lo) + "," +
                                 std::to_string(g.hi) + ")");
        for (const Element& v : ln_group_safe(tr, r, mid, g.hi))
          if (!parent.count(v))
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": master-half safe value " + v.str() +
                                 " escaped the parent group [" +
                                 std::to_string(g.lo) + "," +
                                 std::to_string(g.hi) + ")");
      }
      for (int i : tr.correct) {
        if (i < g.lo || i >= g.hi) continue;
        for (const Element& v : tr.ln[r][i].V)
          if (!parent.count(v))
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": id " + std::to_string(i) +
                                 " holds value " + v.str() +
                                 " outside its former group's safe union");
      }
    }
  return ok(name);
}

Verdict check_slave_values_dominate(const Transcript& tr) {
  const char* name = "slave_values_dominate";
  const int iters = static_cast<int>(tr.ln.size()) - 1;
  for (int r = 1; r <= iters; ++r)
    for (const IdInterval& g : groups_at_level(tr.cfg.n, r - 1)) {
      if (g.size() < 2) continue;
      const int mid = split_point(g);
      const std::set<Element> sfs = ln_group_safe(tr, r, g.lo, mid);
      for (int j : tr.correct) {
        if (j < mid || j >= g.hi) continue;
        for (int t = r; t <= iters; ++t)
          for (const Element& v : sfs)
            if (!in(tr.ln[t][j].V, v))
              return bad(name, replay(tr) + "iteration " + std::to_string(t) +
                                   ": master id " + std::to_string(j) +
                                   " lacks slave-half safe value " + v.str() +
                                   " from the split at iteration " +
                                   std::to_string(r));
      }
    }
  return ok(name);
}

Verdict check_value_sets_nested(const Transcript& tr) {
  const char* name = "value_sets_nested";
  const std::size_t last = tr.ln.size() - 1;
  for (std::size_t a = 0; a < tr.correct.size(); ++a)
    for (std::size_t b = a + 1; b < tr.correct.size(); ++b) {
      const int i = tr.correct[a], j = tr.correct[b];
      const std::set<Element> si = as_set(tr.ln[last][i].V);
      const std::set<Element> sj = as_set(tr.ln[last][j].V);
      const bool i_in_j =
          std::includes(sj.begin(), sj.end(), si.begin(), si.end());
      const bool j_in_i =
          std::includes(si.begin(), si.end(), sj.begin(), sj.end());
      if (!i_in_j && !j_in_i)
        return bad(name, replay(tr) + "final value sets of ids " +
                             std::to_string(i) + " and " + std::to_string(j) +
                             " are not nested");
    }
  return ok(name);
}

Verdict check_classifier_containment(const Transcript& tr) {
  const char* name = "classifier_containment";
  const int levels = static_cast<int>(tr.lf.size()) - 1;
  for (int r = 1; r <= levels; ++r) {
    const std::int64_t d = logf_incr_scaled(tr.cfg.f, r);
    for (std::int64_t k : lf_live_labels(tr, r - 1)) {
      const std::set<Element> parent = lf_label_safe(tr, r - 1, k);
      const std::set<Element> sf_m = lf_label_safe(tr, r, k + d);
      const std::set<Element> sf_s = lf_label_safe(tr, r, k - d);
      for (const Element& v : sf_m)
        if (!parent.count(v))
          return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                               ": master-row value " + v.str() +
                               " escaped the parent row of label " +
                               std::to_string(k));
      for (const Element& v : sf_s)
        if (!parent.count(v))
          return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                               ": slave-row value " + v.str() +
                               " escaped the parent row of label " +
                               std::to_string(k));
      for (int i : tr.correct) {
        if (tr.lf[r - 1][i].label != k) continue;
        for (const Element& v : tr.lf[r][i].V)
          if (!parent.count(v))
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": id " + std::to_string(i) +
                                 " holds value " + v.str() +
                                 " outside its former label's safe union");
        if (tr.lf[r][i].master)
          for (const Element& v : sf_s)
            if (!in(tr.lf[r][i].V, v))
              return bad(name, replay(tr) + "iteration " +
                                   std::to_string(r) + ": master id " +
                                   std::to_string(i) +
                                   " lacks slave-row value " + v.str());
      }
    }
  }
  return ok(name);
}

Verdict check_classifier_windows(const Transcript& tr) {
  const char* name = "classifier_windows";
  if (!distinct_correct_inputs(tr)) return ok(name);  // cardinality proxy off
  const int levels = static_cast<int>(tr.lf.size()) - 1;
  const std::int64_t scale = logf_scale(tr.cfg.f);
  const int L2 = 2 * logf_levels(tr.cfg.f);
  for (int b = 0; b <= levels; ++b) {
    const std::int64_t w = std::int64_t{1} << (L2 - b);
    for (int i : tr.correct) {
      const std::int64_t k = tr.lf[b][i].label;
      const std::int64_t sz =
          static_cast<std::int64_t>(tr.lf[b][i].V.size()) * scale;
      if (sz < k - w || sz > k + w)
        return bad(name, replay(tr) + "boundary " + std::to_string(b) +
                             ": id " + std::to_string(i) + " holds " +
                             std::to_string(tr.lf[b][i].V.size()) +
                             " values, outside the window of label " +
                             std::to_string(k) + " +- " + std::to_string(w));
    }
    for (std::int64_t k : lf_live_labels(tr, b)) {
      const std::int64_t sz =
          static_cast<std::int64_t>(lf_label_safe(tr, b, k).size()) * scale;
      if (sz > k + w)
        return bad(name, replay(tr) + "boundary " + std::to_string(b) +
                             ": safe union of label " + std::to_string(k) +
                             " holds " + std::to_string(sz / scale) +
                             " values, above its window");
    }
  }
  for (int r = 1; r <= levels; ++r) {
    const std::int64_t d = logf_incr_scaled(tr.cfg.f, r);
    for (std::int64_t k : lf_live_labels(tr, r - 1)) {
      const std::int64_t lo = k - 2 * d, hi = k + 2 * d;
      bool slave_member = false;
      for (int i : tr.correct) {
        if (tr.lf[r - 1][i].label != k) continue;
        const std::int64_t sz =
            static_cast<std::int64_t>(tr.lf[r][i].V.size()) * scale;
        if (tr.lf[r][i].master) {
          if (sz <= k || sz > hi)
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": master id " + std::to_string(i) +
                                 " holds " +
                                 std::to_string(tr.lf[r][i].V.size()) +
                                 " values, outside (" + std::to_string(k) +
                                 ", " + std::to_string(hi) + "]");
        } else {
          slave_member = true;
          if (sz < lo || sz > k)
            return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                                 ": slave id " + std::to_string(i) +
                                 " holds " +
                                 std::to_string(tr.lf[r][i].V.size()) +
                                 " values, outside [" + std::to_string(lo) +
                                 ", " + std::to_string(k) + "]");
        }
      }
      const std::int64_t master_sz = static_cast<std::int64_t>(
          lf_label_safe(tr, r, k + d).size()) * scale;
      if (master_sz > hi)
        return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                             ": master row of label " + std::to_string(k) +
                             " overflows its window");
      if (slave_member) {
        const std::int64_t slave_sz = static_cast<std::int64_t>(
            lf_label_safe(tr, r, k - d).size()) * scale;
        if (slave_sz > k)
          return bad(name, replay(tr) + "iteration " + std::to_string(r) +
                               ": slave row of label " + std::to_string(k) +
                               " overflows its window");
      }
    }
  }
  return ok(name);
}

Verdict check_same_group_same_values(const Transcript& tr) {
  const char* name = "same_group_same_values";
  if (!distinct_correct_inputs(tr)) return ok(name);
  const std::size_t last = tr.lf.size() - 1;
  for (std::size_t a = 0; a < tr.correct.size(); ++a)
    for (std::size_t b = a + 1; b < tr.correct.size(); ++b) {
      const int i = tr.correct[a], j = tr.correct[b];
      if (tr.lf[last][i].label != tr.lf[last][j].label) continue;
      if (as_set(tr.lf[last][i].V) != as_set(tr.lf[last][j].V))
        return bad(name, replay(tr) + "ids " + std::to_string(i) + " and " +
                             std::to_string(j) +
                             " share the final label but hold different "
                             "value sets");
    }
  return ok(name);
}

Verdict check_label_whitelist(const Transcript& tr) {
  const char* name = "label_whitelist";
  const int levels = static_cast<int>(tr.lf.size()) - 1;
  std::set<std::int64_t> allowed;
  for (int b = 0; b <= levels; ++b) {
    const std::vector<std::int64_t> wl =
        logf_labels_at(tr.cfg.n, tr.cfg.f, b + 1);
    allowed.insert(wl.begin(), wl.end());
    for (int i : tr.correct) {
      if (!std::binary_search(wl.begin(), wl.end(), tr.lf[b][i].label))
        return bad(name, replay(tr) + "boundary " + std::to_string(b) +
                             ": id " + std::to_string(i) +
                             " carries unreachable label " +
                             std::to_string(tr.lf[b][i].label));
      for (const auto& [k, row] : tr.lf[b][i].F)
        if (!allowed.count(k))
          return bad(name, replay(tr) + "boundary " + std::to_string(b) +
                               ": id " + std::to_string(i) +
                               " stores a row for unreachable label " +
                               std::to_string(k));
    }
  }
  return ok(name);
}

Verdict check_correct_value_persists(const Transcript& tr) {
  return tr.cfg.algorithm == AlgoKind::logn ? persists_logn(tr)
                                            : persists_logf(tr);
}

Verdict check_input_in_value_set(const Transcript& tr) {
  const char* name = "input_in_value_set";
  for (int i : tr.correct) {
    const std::vector<Element>& V = tr.cfg.algorithm == AlgoKind::logn
                                        ? tr.ln.back()[i].V
                                        : tr.lf.back()[i].V;
    if (!in(V, tr.cfg.inputs[i]))
      return bad(name, replay(tr) + "id " + std::to_string(i) +
                           " finished without its own input " +
                           tr.cfg.inputs[i].str() + " in its value set");
  }
  return ok(name);
}

std::vector<std::string> checker_properties(AlgoKind a) {
  std::vector<std::string> out{"comparability",  "downward_validity",
                               "upward_validity", "at_most_one",
                               "round_bound",     "message_bound",
                               "output_present"};
  switch (a) {
    case AlgoKind::sqrtf:
      out.insert(out.end(), {"value_in_safe_lattice", "value_monotone",
                             "safe_lattice_shrinks", "bad_set_sound",
                             "bad_ignored", "decide_within_two"});
      break;
    case AlgoKind::logn:
      out.insert(out.end(),
                 {"group_safe_nesting", "correct_value_persists",
                  "slave_values_dominate", "value_sets_nested",
                  "input_in_value_set"});
      break;
    case AlgoKind::logf:
      out.insert(out.end(),
                 {"classifier_containment", "classifier_windows",
                  "correct_value_persists", "same_group_same_values",
                  "label_whitelist", "input_in_value_set"});
      break;
  }
  return out;
}

std::vector<Verdict> check_all(const Transcript& tr) {
  std::vector<Verdict> out;
  out.push_back(check_comparability(tr));
  out.push_back(check_downward(tr));
  out.push_back(check_upward(tr));
  out.push_back(check_at_most_one(tr));
  out.push_back(check_round_bound(tr));
  out.push_back(check_message_bound(tr));
  out.push_back(check_output_present(tr));
  switch (tr.cfg.algorithm) {
    case AlgoKind::sqrtf:
      out.push_back(check_value_in_safe_lattice(tr));
      out.push_back(check_value_monotone(tr));
      out.push_back(check_safe_lattice_shrinks(tr));
      out.push_back(check_bad_set_sound(tr));
      out.push_back(check_bad_ignored(tr));
      out.push_back(check_decide_within_two(tr));
      break;
    case AlgoKind::logn:
      out.push_back(check_group_safe_nesting(tr));
      out.push_back(check_correct_value_persists(tr));
      out.push_back(check_slave_values_dominate(tr));
      out.push_back(check_value_sets_nested(tr));
      out.push_back(check_input_in_value_set(tr));
      break;
    case AlgoKind::logf:
      out.push_back(check_classifier_containment(tr));
      out.push_back(check_classifier_windows(tr));
      out.push_back(check_correct_value_persists(tr));
      out.push_back(check_same_group_same_values(tr));
      out.push_back(check_label_whitelist(tr));
      out.push_back(check_input_in_value_set(tr));
      break;
  }
  return out;
}

}  // namespace bla
