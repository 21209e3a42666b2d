#include "bla/adversary.hpp"

#include <algorithm>
#include <cctype>

#include "bla/bla_logf.hpp"

namespace bla {
namespace {

class Silent : public Adversary {
 public:
  std::vector<Send> emit(int, std::vector<Send>, const NetView&) override {
    return {};
  }
};

// Follows the honest script up to (excluding) global sub-round r.
class CrashAt : public Adversary {
 public:
  explicit CrashAt(int r) : r_(r) {}
  std::vector<Send> emit(int, std::vector<Send> honest,
                         const NetView& v) override {
    if (v.sub < r_) return honest;
    return {};
  }

 private:
  int r_;
};

// Honest through outer round r-1, silent from outer round r on: every
// correct process graded it 2 in earlier rounds, none does at round r.
class Terrible : public Adversary {
 public:
  explicit Terrible(int r) : r_(r) {}
  std::vector<Send> emit(int, std::vector<Send> honest,
                         const NetView& v) override {
    if (v.outer_round < r_) return honest;
    return {};
  }

 private:
  int r_;
};

Element doctored(const Element& e, const Element& alt) { return join(e, alt); }

// Leads with the honest payload toward the lower half of the ids and a
// joined-up payload toward the upper half, then refuses to echo or confirm
// its own instance so the graders cannot settle the difference.
class EquivocateSplit : public Adversary {
 public:
  std::vector<Send> emit(int self, std::vector<Send> honest,
                         const NetView& v) override {
    std::vector<Send> out;
    const Element& alt = (*v.inputs)[(self + 1) % v.n];
    for (Send& s : honest) {
      if (v.phase == 1 && s.rec.leader == self && s.to == kBroadcast) {
        const int split = (v.n + 1) / 2;
        for (int to = 0; to < v.n; ++to) {
          Record rec = s.rec;
          if (to >= split) {
            if (rec.value) rec.value = doctored(*rec.value, alt);
            if (!rec.set.empty()) {
              GeneratingSet g;
              for (const Element& e : rec.set) g.insert(doctored(e, alt));
              rec.set = g.members();
            }
          }
          out.push_back(Send{to, rec});
        }
        continue;
      }
      if ((v.phase == 2 || v.phase == 3) && s.rec.leader == self) continue;
      out.push_back(std::move(s));
    }
    return out;
  }
};

// Joins a tag nobody input into every payload it leads with; the tag rotates
// with the outer round so each round introduces a novel value.
class InjectFresh : public Adversary {
 public:
  std::vector<Send> emit(int self, std::vector<Send> honest,
                         const NetView& v) override {
    for (Send& s : honest) {
      if (v.phase != 1 || s.rec.leader != self) continue;
      const Element fresh{
          std::vector<Tag>{Tag{self, v.outer_round % v.universe_size}}};
      if (s.rec.value) s.rec.value = join(*s.rec.value, fresh);
      if (s.rec.kind == RecKind::sgc) {
        GeneratingSet g(s.rec.set);
        g.insert(fresh);
        s.rec.set = g.members();
      }
    }
    return honest;
  }
};

// Label-protocol attacks: leads under a label it does not hold (alternating
// between an unreachable label, which receipt validation discards, and a
// live label of another group), and forges the exchange step with oversized
// sets and sets that fail the receiver's subset guard.
class LieLabel : public Adversary {
 public:
  std::vector<Send> emit(int self, std::vector<Send> honest,
                         const NetView& v) override {
    if (v.algorithm != AlgoKind::logf || v.outer_round < 2) return honest;
    const int iter = v.outer_round - 1;
    const std::vector<std::int64_t> wl = logf_labels_at(v.n, v.f, iter);
    if (v.phase == 1) {
      for (Send& s : honest) {
        if (s.rec.leader != self || !s.rec.label) continue;
        if ((self + iter) % 2 == 0 || wl.size() < 2) {
          s.rec.label = wl.back() + 1;  // unreachable
        } else {
          const std::int64_t own = *s.rec.label;
          for (std::int64_t k : wl)
            if (k != own) {
              s.rec.label = k;  // a live group it is not in
              break;
            }
        }
      }
      return honest;
    }
    if (v.phase == 4) {
      bool junk = (self + iter) % 2 == 0;
      for (Send& s : honest) {
        if (junk) {
          s.rec.set = {Element{
              std::vector<Tag>{Tag{self, iter % v.universe_size}}}};
        } else {
          // One more distinct element than the universe height: discarded
          // whole at receipt.
          GeneratingSet g;
          g.insert(Element{});
          for (int o = 0; o < v.n; ++o)
            for (int c = 0; c < v.universe_size; ++c)
              g.insert(Element{std::vector<Tag>{Tag{o, c}}});
          s.rec.set = g.members();
        }
        junk = !junk;
      }
      return honest;
    }
    return honest;
  }
};

// Replaces every payload it leads with per-recipient draws from whatever the
// recipient currently admits, so nothing it sends is ever filtered out.
class RandomWithinSafe : public Adversary {
 public:
  RandomWithinSafe(std::uint64_t param, std::uint64_t run_seed)
      : rng_(mix_seed(run_seed, param ^ 0x72777360ULL)) {}

  std::vector<Send> emit(int self, std::vector<Send> honest,
                         const NetView& v) override {
    if (v.phase != 1) return honest;
    std::vector<Send> out;
    for (Send& s : honest) {
      if (s.rec.leader != self || s.to != kBroadcast) {
        out.push_back(std::move(s));
        continue;
      }
      for (int to = 0; to < v.n; ++to) {
        Record rec = s.rec;
        if (rec.kind == RecKind::gc) {
          rec.value = v.accept_all
                          ? join_all(draw(*v.inputs))
                          : draw_join(v.row(to, self, std::nullopt));
        } else if (rec.kind == RecKind::sgc) {
          const GeneratingSet* row = v.row(to, self, rec.label);
          rec.set = row ? draw(row->members()) : std::vector<Element>{};
        }
        out.push_back(Send{to, rec});
      }
    }
    return out;
  }

 private:
  // Up to 3 distinct picks, possibly none.
  std::vector<Element> draw(const std::vector<Element>& pool) {
    std::vector<Element> picks;
    if (!pool.empty()) {
      const std::uint64_t want = rng_.below(4);
      for (std::uint64_t i = 0; i < want; ++i)
        picks.push_back(pool[rng_.below(pool.size())]);
    }
    return GeneratingSet(std::move(picks)).members();
  }

  Element draw_join(const GeneratingSet* row) {
    if (!row) return Element{};
    return join_all(draw(row->members()));
  }

  SplitMix64 rng_;
};

}  // namespace

std::vector<std::string> builtin_adversaries() {
  return {"silent",       "crash_at(r)", "terrible(r)",
          "equivocate_split", "inject_fresh", "lie_label",
          "random_within_safe(seed)"};
}

std::optional<std::pair<std::string, std::optional<long long>>>
parse_adversary(const std::string& spec) {
  std::size_t i = 0;
  while (i < spec.size() &&
         (std::islower(static_cast<unsigned char>(spec[i])) || spec[i] == '_'))
    ++i;
  if (i == 0) return std::nullopt;
  std::string name = spec.substr(0, i);
  if (i == spec.size()) return {{name, std::nullopt}};
  if (spec[i] != '(' || spec.back() != ')') return std::nullopt;
  const std::string arg = spec.substr(i + 1, spec.size() - i - 2);
  if (arg.empty()) return std::nullopt;
  std::size_t j = arg[0] == '-' ? 1 : 0;
  if (j == arg.size()) return std::nullopt;
  for (std::size_t k = j; k < arg.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(arg[k]))) return std::nullopt;
  try {
    return {{name, std::stoll(arg)}};
  } catch (...) {
    return std::nullopt;
  }
}

std::unique_ptr<Adversary> make_adversary(const std::string& spec,
                                          std::uint64_t run_seed) {
  auto parsed = parse_adversary(spec);
  if (!parsed) return nullptr;
  const auto& [name, arg] = *parsed;
  if (name == "silent" && !arg) return std::make_unique<Silent>();
  if (name == "crash_at" && arg && *arg >= 1)
    return std::make_unique<CrashAt>(static_cast<int>(*arg));
  if (name == "terrible" && arg && *arg >= 1)
    return std::make_unique<Terrible>(static_cast<int>(*arg));
  if (name == "equivocate_split" && !arg)
    return std::make_unique<EquivocateSplit>();
  if (name == "inject_fresh" && !arg) return std::make_unique<InjectFresh>();
  if (name == "lie_label" && !arg) return std::make_unique<LieLabel>();
  if (name == "random_within_safe" && arg && *arg >= 0)
    return std::make_unique<RandomWithinSafe>(
        static_cast<std::uint64_t>(*arg), run_seed);
  return nullptr;
}

}  // namespace bla
