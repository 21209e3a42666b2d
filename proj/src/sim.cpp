#include "bla/sim.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "bla/adversary.hpp"
#include "bla/rng.hpp"

namespace bla {

std::string algo_name(AlgoKind a) {
  switch (a) {
    case AlgoKind::sqrtf: return "sqrtf";
    case AlgoKind::logn: return "logn";
    case AlgoKind::logf: return "logf";
  }
  return "?";
}

std::optional<AlgoKind> algo_from_name(const std::string& s) {
  if (s == "sqrtf") return AlgoKind::sqrtf;
  if (s == "logn") return AlgoKind::logn;
  if (s == "logf") return AlgoKind::logf;
  return std::nullopt;
}

bool RunConfig::is_byz(int id) const {
  return std::binary_search(byzantine_ids.begin(), byzantine_ids.end(), id);
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["f"] = f;
  j["byzantine_ids"] = byzantine_ids;
  j["algorithm"] = algo_name(algorithm);
  nlohmann::ordered_json in = nlohmann::ordered_json::array();
  for (const Element& e : inputs) in.push_back(e.str());
  j["inputs"] = std::move(in);
  j["adversary"] = adversary;
  j["seed"] = seed;
  j["universe_size"] = universe_size;
  return j;
}

std::optional<RunConfig> RunConfig::from_json(const nlohmann::json& j,
                                              std::string* error) {
  auto fail = [&](const std::string& msg) -> std::optional<RunConfig> {
    if (error) *error = msg;
    return std::nullopt;
  };
  if (!j.is_object()) return fail("config must be a JSON object");
  static const char* kKeys[] = {"n",      "f",         "byzantine_ids",
                                "algorithm", "inputs", "adversary",
                                "seed",   "universe_size"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return it.key() == k;
        }) == std::end(kKeys))
      return fail("unknown config field: " + it.key());
  }
  for (const char* k : kKeys)
    if (!j.contains(k)) return fail(std::string("missing config field: ") + k);

  RunConfig cfg;
  if (!j["n"].is_number_integer()) return fail("n must be an integer");
  cfg.n = j["n"].get<int>();
  if (!j["f"].is_number_integer()) return fail("f must be an integer");
  cfg.f = j["f"].get<int>();
  if (!j["byzantine_ids"].is_array())
    return fail("byzantine_ids must be an array");
  for (const auto& v : j["byzantine_ids"]) {
    if (!v.is_number_integer()) return fail("byzantine_ids entries must be integers");
    cfg.byzantine_ids.push_back(v.get<int>());
  }
  std::sort(cfg.byzantine_ids.begin(), cfg.byzantine_ids.end());
  if (std::adjacent_find(cfg.byzantine_ids.begin(), cfg.byzantine_ids.end()) !=
      cfg.byzantine_ids.end())
    return fail("byzantine_ids contains duplicates");
  if (!j["algorithm"].is_string()) return fail("algorithm must be a string");
  auto algo = algo_from_name(j["algorithm"].get<std::string>());
  if (!algo) return fail("unknown algorithm: " + j["algorithm"].get<std::string>());
  cfg.algorithm = *algo;
  if (!j["inputs"].is_array()) return fail("inputs must be an array");
  for (const auto& v : j["inputs"]) {
    if (!v.is_string()) return fail("inputs entries must be strings");
    auto e = Element::parse(v.get<std::string>());
    if (!e) return fail("unparsable input element: " + v.get<std::string>());
    cfg.inputs.push_back(std::move(*e));
  }
  if (!j["adversary"].is_string()) return fail("adversary must be a string");
  cfg.adversary = j["adversary"].get<std::string>();
  if (j["seed"].is_number_unsigned()) {
    cfg.seed = j["seed"].get<std::uint64_t>();
  } else if (j["seed"].is_number_integer()) {
    const auto s = j["seed"].get<std::int64_t>();
    if (s < 0) return fail("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else {
    return fail("seed must be an integer");
  }
  if (!j["universe_size"].is_number_integer())
    return fail("universe_size must be an integer");
  cfg.universe_size = j["universe_size"].get<int>();
  return cfg;
}

std::optional<std::string> validate_config(const RunConfig& cfg) {
  if (cfg.n < 1) return "n must be at least 1";
  if (cfg.f < 0) return "f must be nonnegative";
  if (cfg.universe_size < 1) return "universe_size must be at least 1";
  if (cfg.n < 3 * cfg.f + 1)
    return "resilience bound violated: need n >= 3f+1, got n=" +
           std::to_string(cfg.n) + " f=" + std::to_string(cfg.f);
  if (cfg.t() > cfg.f)
    return "more byzantine ids than f allows";
  for (int id : cfg.byzantine_ids)
    if (id < 0 || id >= cfg.n)
      return "byzantine id out of range: " + std::to_string(id);
  if (static_cast<int>(cfg.inputs.size()) != cfg.n)
    return "inputs must hold exactly n elements";
  const Universe uni = cfg.universe();
  for (int i = 0; i < cfg.n; ++i)
    if (!uni.valid_element(cfg.inputs[i]))
      return "input " + std::to_string(i) + " has tags outside the universe";
  if (!make_adversary(cfg.adversary, cfg.seed))
    return "unknown or malformed adversary: " + cfg.adversary;
  return std::nullopt;
}

int Transcript::envelopes_total() const {
  int s = 0;
  for (int v : env_total) s += v;
  return s;
}

int Transcript::envelopes_no_self() const {
  int s = 0;
  for (std::size_t i = 0; i < env_total.size(); ++i)
    s += env_total[i] - env_self[i];
  return s;
}

namespace {

struct SubInfo {
  int phase = 0;  // 1..3 broadcast phases, 4 = logf exchange
  int outer = 0;  // sqrtf round; 1 = initial, 1+it = iteration (log)
  bool boundary = false;
};

SubInfo sub_info(AlgoKind algo, int sub) {
  SubInfo si;
  if (algo == AlgoKind::sqrtf) {
    si.phase = (sub - 1) % 3 + 1;
    si.outer = (sub - 1) / 3 + 1;
    si.boundary = si.phase == 3;
    return si;
  }
  if (sub <= 3) {
    si.phase = sub;
    si.outer = 1;
    si.boundary = sub == 3;
    return si;
  }
  const int span = algo == AlgoKind::logn ? 3 : 4;
  si.phase = (sub - 4) % span + 1;
  si.outer = 2 + (sub - 4) / span;
  si.boundary = si.phase == span;
  return si;
}

std::string set_str(const std::vector<Element>& es) {
  std::string s = "[";
  for (const Element& e : es) s += e.str();
  s += ']';
  return s;
}

std::string snap_line(const SqrtfSnap& s) {
  std::string out = "r" + std::to_string(s.round);
  out += "|v=" + s.v.str();
  out += "|sv=" + set_str(s.sv);
  out += "|bad=";
  for (int b : s.bad) out += std::to_string(b) + ",";
  out += "|t=" + std::to_string(s.term_round);
  out += "|d=";
  out += s.decided_at ? std::to_string(*s.decided_at) : std::string("-");
  out += "|y=";
  out += s.y ? s.y->str() : std::string("-");
  return out;
}

std::string snap_line(const LognSnap& s) {
  std::string out = "i" + std::to_string(s.iteration);
  out += "|V=" + set_str(s.V);
  out += "|S=";
  for (const auto& row : s.S) out += set_str(row);
  return out;
}

std::string snap_line(const LogfSnap& s) {
  std::string out = "i" + std::to_string(s.iteration);
  out += "|V=" + set_str(s.V);
  out += "|l=" + std::to_string(s.label);
  out += s.master ? "|m" : "|s";
  out += "|T=" + set_str(s.T);
  out += "|F=";
  for (const auto& [k, row] : s.F)
    out += std::to_string(k) + ":" + set_str(row) + ";";
  return out;
}

class Router {
 public:
  Router(const RunConfig& cfg, Transcript& tr)
      : cfg_(cfg), tr_(tr), uni_(cfg.universe()) {}

  // Validate, expand broadcasts, group into envelopes, count, and build
  // per-recipient inboxes ordered by sender id.
  std::vector<std::vector<Arrival>> route(
      std::vector<std::vector<Send>>& sends, const SubInfo& si, int sub) {
    if (cfg_.algorithm == AlgoKind::logf && si.outer >= 2)
      wl_ = logf_labels_at(cfg_.n, cfg_.f, si.outer - 1);
    std::vector<std::vector<Arrival>> inbox(cfg_.n);
    int et = 0, es = 0, ec = 0;
    for (int from = 0; from < cfg_.n; ++from) {
      std::vector<std::vector<Record>> out(cfg_.n);
      for (Send& s : sends[from]) {
        if (s.to != kBroadcast && (s.to < 0 || s.to >= cfg_.n)) continue;
        auto rec = validate(std::move(s.rec), from, si);
        if (!rec) continue;
        if (s.to == kBroadcast) {
          for (int to = 0; to < cfg_.n; ++to) out[to].push_back(*rec);
        } else {
          out[s.to].push_back(std::move(*rec));
        }
      }
      for (int to = 0; to < cfg_.n; ++to) {
        if (out[to].empty()) continue;
        ++et;
        if (from == to) ++es;
        if (!cfg_.is_byz(from)) ++ec;
        history_.push_back(Envelope{from, to, sub, out[to]});
        for (Record& r : out[to])
          inbox[to].push_back(Arrival{from, std::move(r)});
      }
    }
    tr_.env_total.push_back(et);
    tr_.env_self.push_back(es);
    tr_.env_correct.push_back(ec);
    return inbox;
  }

  const std::vector<Envelope>& history() const { return history_; }

 private:
  std::optional<Record> validate(Record rec, int from, const SubInfo& si) {
    RecKind want = RecKind::gc;
    if (cfg_.algorithm != AlgoKind::sqrtf && si.outer >= 2)
      want = si.phase == 4 ? RecKind::cx : RecKind::sgc;
    if (rec.kind != want) return std::nullopt;
    if (rec.sub != si.phase) return std::nullopt;
    if (rec.leader < 0 || rec.leader >= cfg_.n) return std::nullopt;
    switch (rec.kind) {
      case RecKind::gc:
        if (!rec.value || !uni_.valid_element(*rec.value)) return std::nullopt;
        if (!rec.set.empty() || rec.label) return std::nullopt;
        break;
      case RecKind::sgc:
        if (rec.value) return std::nullopt;
        if (!clean_set(rec.set)) return std::nullopt;
        if (rec.label) {
          if (cfg_.algorithm == AlgoKind::logn) return std::nullopt;
          if (!label_ok(*rec.label)) return std::nullopt;
        }
        break;
      case RecKind::cx:
        if (rec.value) return std::nullopt;
        if (!rec.label || !label_ok(*rec.label)) return std::nullopt;
        if (rec.leader != from) return std::nullopt;
        if (!clean_set(rec.set)) return std::nullopt;
        break;
    }
    return rec;
  }

  // Wire sets are normalized to canonical order; duplicate-containing or
  // oversized sets make the whole record malformed.
  bool clean_set(std::vector<Element>& set) {
    for (const Element& e : set)
      if (!uni_.valid_element(e)) return false;
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) return false;
    return static_cast<int>(set.size()) <= uni_.height();
  }

  bool label_ok(std::int64_t label) const {
    return std::binary_search(wl_.begin(), wl_.end(), label);
  }

  const RunConfig& cfg_;
  Transcript& tr_;
  Universe uni_;
  std::vector<std::int64_t> wl_;
  std::vector<Envelope> history_;
};

}  // namespace

Transcript simulate(const RunConfig& cfg) {
  if (auto err = validate_config(cfg))
    throw std::invalid_argument("invalid config: " + *err);

  Transcript tr;
  tr.cfg = cfg;
  tr.byz.insert(cfg.byzantine_ids.begin(), cfg.byzantine_ids.end());
  for (int i = 0; i < cfg.n; ++i)
    if (!tr.byz.count(i)) tr.correct.push_back(i);

  const Universe uni = cfg.universe();
  auto adversary = make_adversary(cfg.adversary, cfg.seed);
  SplitMix64 adv_rng(mix_seed(cfg.seed, 0x61647673696dULL));

  std::vector<SqrtfProcess> sq;
  std::vector<LognProcess> ln;
  std::vector<LogfProcess> lf;
  int total_subs = 0;  // 0 = dynamic (sqrtf)
  switch (cfg.algorithm) {
    case AlgoKind::sqrtf: {
      const int cap = sqrtf_round_cap(uni.height(), cfg.f);
      for (int i = 0; i < cfg.n; ++i)
        sq.emplace_back(cfg.n, cfg.f, i, cfg.inputs[i], cap);
      break;
    }
    case AlgoKind::logn:
      total_subs = 3 + 3 * logn_iterations(cfg.n);
      for (int i = 0; i < cfg.n; ++i)
        ln.emplace_back(cfg.n, cfg.f, i, cfg.inputs[i]);
      break;
    case AlgoKind::logf:
      total_subs = 3 + 4 * logf_levels(cfg.f);
      for (int i = 0; i < cfg.n; ++i)
        lf.emplace_back(cfg.n, cfg.f, i, cfg.inputs[i]);
      break;
  }

  Router router(cfg, tr);
  NetView view;
  view.n = cfg.n;
  view.f = cfg.f;
  view.algorithm = cfg.algorithm;
  view.universe_size = cfg.universe_size;
  view.inputs = &cfg.inputs;
  view.history = &router.history();
  view.rng = &adv_rng;
  view.row = [&](int target, int leader,
                 const std::optional<std::int64_t>& label)
      -> const GeneratingSet* {
    if (target < 0 || target >= cfg.n) return nullptr;
    switch (cfg.algorithm) {
      case AlgoKind::sqrtf: return &sq[target].safe();
      case AlgoKind::logn:
        if (leader < 0 || leader >= cfg.n) return nullptr;
        return &ln[target].safe_row(leader);
      case AlgoKind::logf: return lf[target].row_for_label(label);
    }
    return nullptr;
  };

  int sub = 0;
  bool done = false;
  while (!done) {
    ++sub;
    const SubInfo si = sub_info(cfg.algorithm, sub);
    view.sub = sub;
    view.phase = si.phase;
    view.outer_round = si.outer;
    view.accept_all = cfg.algorithm == AlgoKind::sqrtf ? si.outer == 1
                                                       : sub <= 3;

    std::vector<std::vector<Send>> sends(cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
      switch (cfg.algorithm) {
        case AlgoKind::sqrtf: sends[i] = sq[i].emit(sub); break;
        case AlgoKind::logn: sends[i] = ln[i].emit(sub); break;
        case AlgoKind::logf: sends[i] = lf[i].emit(sub); break;
      }
    }
    for (int b : cfg.byzantine_ids)
      sends[b] = adversary->emit(b, std::move(sends[b]), view);

    auto inbox = router.route(sends, si, sub);
    for (int i = 0; i < cfg.n; ++i) {
      switch (cfg.algorithm) {
        case AlgoKind::sqrtf: sq[i].deliver(sub, inbox[i]); break;
        case AlgoKind::logn: ln[i].deliver(sub, inbox[i]); break;
        case AlgoKind::logf: lf[i].deliver(sub, inbox[i]); break;
      }
    }

    if (!si.boundary) continue;

    std::string digest_src;
    switch (cfg.algorithm) {
      case AlgoKind::sqrtf: {
        std::vector<SqrtfSnap> snaps;
        for (int i = 0; i < cfg.n; ++i) snaps.push_back(sq[i].finish_round());
        for (int i : tr.correct)
          digest_src += std::to_string(i) + "{" + snap_line(snaps[i]) + "}";
        tr.sq.push_back(std::move(snaps));
        int latest = 0;
        for (int i : tr.correct)
          latest = std::max(latest, sq[i].term_round());
        done = si.outer >= latest;
        break;
      }
      case AlgoKind::logn: {
        std::vector<LognSnap> snaps;
        for (int i = 0; i < cfg.n; ++i)
          snaps.push_back(si.outer == 1 ? ln[i].finish_initial()
                                        : ln[i].finish_iteration());
        for (int i : tr.correct)
          digest_src += std::to_string(i) + "{" + snap_line(snaps[i]) + "}";
        tr.ln.push_back(std::move(snaps));
        done = sub == total_subs;
        break;
      }
      case AlgoKind::logf: {
        std::vector<LogfSnap> snaps;
        for (int i = 0; i < cfg.n; ++i)
          snaps.push_back(si.outer == 1 ? lf[i].finish_initial()
                                        : lf[i].finish_iteration());
        for (int i : tr.correct)
          digest_src += std::to_string(i) + "{" + snap_line(snaps[i]) + "}";
        tr.lf.push_back(std::move(snaps));
        done = sub == total_subs;
        break;
      }
    }
    tr.digests.push_back(hex64(fnv1a64(digest_src)));
    ++tr.outer_rounds;
  }
  tr.sub_rounds = sub;

  // Initial-round Byzantine contributions, deduplicated per id.
  std::map<int, std::set<Element>> rec;
  for (int i : tr.correct) {
    const std::vector<GradeTriple>* triples = nullptr;
    switch (cfg.algorithm) {
      case AlgoKind::sqrtf: triples = &tr.sq[0][i].triples; break;
      case AlgoKind::logn: triples = &tr.ln[0][i].init_triples; break;
      case AlgoKind::logf: triples = &tr.lf[0][i].init_triples; break;
    }
    for (const GradeTriple& t : *triples)
      if (t.score >= 1 && tr.byz.count(t.leader))
        rec[t.leader].insert(*t.value);
  }
  for (auto& [id, vals] : rec)
    tr.recorded_byz[id] = std::vector<Element>(vals.begin(), vals.end());

  tr.outputs.resize(cfg.n);
  tr.decision_rounds.resize(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    switch (cfg.algorithm) {
      case AlgoKind::sqrtf:
        tr.outputs[i] = sq[i].output();
        tr.decision_rounds[i] = sq[i].decided_at();
        tr.term_rounds.push_back(sq[i].term_round());
        break;
      case AlgoKind::logn:
        tr.outputs[i] = ln[i].output();
        tr.decision_rounds[i] = tr.outer_rounds;
        break;
      case AlgoKind::logf:
        tr.outputs[i] = lf[i].output();
        tr.decision_rounds[i] = tr.outer_rounds;
        break;
    }
  }
  return tr;
}

nlohmann::ordered_json make_report(const Transcript& tr,
                                   const std::vector<Verdict>& verdicts) {
  nlohmann::ordered_json j;
  j["config"] = tr.cfg.to_json();
  j["sub_rounds"] = tr.sub_rounds;
  j["outer_rounds"] = tr.outer_rounds;
  nlohmann::ordered_json env;
  env["total"] = tr.envelopes_total();
  env["total_excluding_self"] = tr.envelopes_no_self();
  env["per_sub_round"] = tr.env_total;
  env["per_sub_round_correct"] = tr.env_correct;
  j["envelopes"] = std::move(env);
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  nlohmann::ordered_json decs = nlohmann::ordered_json::array();
  for (int i = 0; i < tr.cfg.n; ++i) {
    if (tr.byz.count(i) || !tr.outputs[i]) {
      outs.push_back(nullptr);
      decs.push_back(nullptr);
      continue;
    }
    outs.push_back(tr.outputs[i]->str());
    if (tr.decision_rounds[i])
      decs.push_back(*tr.decision_rounds[i]);
    else
      decs.push_back(nullptr);
  }
  j["outputs"] = std::move(outs);
  j["decision_rounds"] = std::move(decs);
  if (tr.cfg.algorithm == AlgoKind::sqrtf) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (int i = 0; i < tr.cfg.n; ++i) {
      if (tr.byz.count(i))
        terms.push_back(nullptr);
      else
        terms.push_back(tr.term_rounds[i]);
    }
    j["term_rounds"] = std::move(terms);
  }
  nlohmann::ordered_json byzv = nlohmann::ordered_json::object();
  for (const auto& [id, vals] : tr.recorded_byz) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Element& e : vals) arr.push_back(e.str());
    byzv[std::to_string(id)] = std::move(arr);
  }
  j["recorded_byzantine_values"] = std::move(byzv);
  j["digests"] = tr.digests;
  nlohmann::ordered_json vj = nlohmann::ordered_json::array();
  bool all = true;
  for (const Verdict& v : verdicts) {
    nlohmann::ordered_json o;
    o["property"] = v.property;
    o["pass"] = v.pass;
    o["witness"] = v.witness;
    vj.push_back(std::move(o));
    all = all && v.pass;
  }
  j["verdicts"] = std::move(vj);
  j["all_pass"] = all;
  return j;
}

}  // namespace bla
