#include "bla/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bla/adversary.hpp"
#include "bla/checker.hpp"
#include "bla/rng.hpp"

namespace bla {
namespace {

constexpr std::uint64_t kIdsSalt = 0x62797a696473ULL;
constexpr std::uint64_t kInputSalt = 0x696e70757473ULL;

bool read_ints(const nlohmann::json& j, std::vector<int>* out,
               std::string* error, const char* key) {
  if (!j.is_array()) {
    *error = std::string(key) + " must be an array of integers";
    return false;
  }
  for (const auto& e : j) {
    if (!e.is_number_integer()) {
      *error = std::string(key) + " must be an array of integers";
      return false;
    }
    out->push_back(e.get<int>());
  }
  return true;
}

}  // namespace

std::optional<SweepSpec> SweepSpec::from_json(const nlohmann::json& j,
                                              std::string* error) {
  if (!j.is_object()) {
    *error = "spec must be a JSON object";
    return std::nullopt;
  }
  static const std::vector<std::string> known{
      "n", "algorithms", "adversaries", "seeds",
      "repetitions", "t_rule", "t_values", "universe_size"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      *error = "unknown spec field: " + it.key();
      return std::nullopt;
    }
  }
  SweepSpec s;
  if (!j.contains("n") || !read_ints(j["n"], &s.n_values, error, "n"))
    return std::nullopt;
  if (!j.contains("algorithms") || !j["algorithms"].is_array()) {
    *error = "algorithms must be an array of names";
    return std::nullopt;
  }
  for (const auto& a : j["algorithms"]) {
    if (!a.is_string() || !algo_from_name(a.get<std::string>())) {
      *error = "unknown algorithm in spec";
      return std::nullopt;
    }
    s.algorithms.push_back(a.get<std::string>());
  }
  if (!j.contains("adversaries") || !j["adversaries"].is_array()) {
    *error = "adversaries must be an array of strategy names";
    return std::nullopt;
  }
  for (const auto& a : j["adversaries"]) {
    if (!a.is_string() || !make_adversary(a.get<std::string>(), 0)) {
      *error = "unknown adversary in spec";
      return std::nullopt;
    }
    s.adversaries.push_back(a.get<std::string>());
  }
  if (!j.contains("seeds") || !j["seeds"].is_array()) {
    *error = "seeds must be an array of integers";
    return std::nullopt;
  }
  for (const auto& e : j["seeds"]) {
    if (e.is_number_unsigned())
      s.seeds.push_back(e.get<std::uint64_t>());
    else if (e.is_number_integer() && e.get<std::int64_t>() >= 0)
      s.seeds.push_back(static_cast<std::uint64_t>(e.get<std::int64_t>()));
    else {
      *error = "seeds must be nonnegative integers";
      return std::nullopt;
    }
  }
  if (j.contains("repetitions")) {
    if (!j["repetitions"].is_number_integer() ||
        j["repetitions"].get<int>() < 1) {
      *error = "repetitions must be a positive integer";
      return std::nullopt;
    }
    s.repetitions = j["repetitions"].get<int>();
  }
  if (j.contains("t_rule")) {
    if (!j["t_rule"].is_string()) {
      *error = "t_rule must be a string";
      return std::nullopt;
    }
    s.t_rule = j["t_rule"].get<std::string>();
    if (s.t_rule != "f" && s.t_rule != "seed_mod_f" && s.t_rule != "zero") {
      *error = "t_rule must be one of f, seed_mod_f, zero";
      return std::nullopt;
    }
  }
  if (j.contains("t_values") &&
      !read_ints(j["t_values"], &s.t_values, error, "t_values"))
    return std::nullopt;
  for (int t : s.t_values)
    if (t < 0) {
      *error = "t_values must be nonnegative";
      return std::nullopt;
    }
  if (j.contains("universe_size")) {
    if (!j["universe_size"].is_number_integer() ||
        j["universe_size"].get<int>() < 1) {
      *error = "universe_size must be a positive integer";
      return std::nullopt;
    }
    s.universe_size = j["universe_size"].get<int>();
  }
  if (s.n_values.empty() || s.algorithms.empty() || s.adversaries.empty() ||
      s.seeds.empty()) {
    *error = "spec expands to no runs";
    return std::nullopt;
  }
  for (int n : s.n_values)
    if (n < 1) {
      *error = "n must be positive";
      return std::nullopt;
    }
  return s;
}

std::vector<int> sweep_byzantine_ids(int n, int t, std::uint64_t seed) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  SplitMix64 rng(mix_seed(seed, kIdsSalt));
  rng.shuffle(ids);
  ids.resize(t);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<Element> sweep_inputs(int n, int universe_size,
                                  std::uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, kInputSalt));
  std::vector<Element> inputs;
  inputs.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int nonce = static_cast<int>(rng.below(universe_size));
    inputs.push_back(Element{std::vector<Tag>{Tag{i, nonce}}});
  }
  return inputs;
}

std::vector<RunConfig> expand_sweep(const SweepSpec& spec) {
  std::vector<RunConfig> out;
  for (int n : spec.n_values) {
    const int f = (n - 1) / 3;
    for (const std::string& algo : spec.algorithms)
      for (const std::string& adv : spec.adversaries)
        for (std::uint64_t seed : spec.seeds)
          for (int rep = 0; rep < spec.repetitions; ++rep) {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(rep);
            std::vector<int> ts;
            if (spec.t_values.empty()) {
              int t = f;
              if (spec.t_rule == "zero")
                t = 0;
              else if (spec.t_rule == "seed_mod_f")
                t = f == 0 ? 0 : static_cast<int>(s % (f + 1));
              ts.push_back(t);
            } else {
              for (int t : spec.t_values) ts.push_back(std::min(t, f));
            }
            for (int t : ts) {
              RunConfig cfg;
              cfg.n = n;
              cfg.f = f;
              cfg.byzantine_ids = sweep_byzantine_ids(n, t, s);
              cfg.algorithm = *algo_from_name(algo);
              cfg.inputs = sweep_inputs(n, spec.universe_size, s);
              cfg.adversary = adv;
              cfg.seed = s;
              cfg.universe_size = spec.universe_size;
              out.push_back(std::move(cfg));
            }
          }
  }
  return out;
}

namespace {

SweepRow run_point(const RunConfig& cfg) {
  SweepRow row;
  row.cfg = cfg;
  const Transcript tr = simulate(cfg);
  const std::vector<Verdict> verdicts = check_all(tr);
  row.sub_rounds = tr.sub_rounds;
  row.envelopes = tr.envelopes_total();
  for (const Verdict& v : verdicts) row.all_pass = row.all_pass && v.pass;
  const nlohmann::ordered_json rep = make_report(tr, verdicts);
  row.report = rep.dump(2);
  row.report.push_back('\n');
  row.report_name =
      "report_" + hex64(fnv1a64(cfg.to_json().dump())) + ".json";
  return row;
}

}  // namespace

SweepResult run_sweep_serial(const std::vector<RunConfig>& points,
                             bool stop_on_failure) {
  SweepResult result;
  for (const RunConfig& cfg : points) {
    result.rows.push_back(run_point(cfg));
    result.all_pass = result.all_pass && result.rows.back().all_pass;
    if (stop_on_failure && !result.rows.back().all_pass) break;
  }
  return result;
}

SweepResult run_sweep_parallel(const std::vector<RunConfig>& points) {
  SweepResult result;
  result.rows.resize(points.size());
  const int count = static_cast<int>(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < count; ++i) result.rows[i] = run_point(points[i]);
  for (const SweepRow& row : result.rows)
    result.all_pass = result.all_pass && row.all_pass;
  return result;
}

bool sweep_parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  os << kSweepCsvHeader << "\n";
  for (const SweepRow& row : result.rows)
    os << row.cfg.n << ", " << row.cfg.f << ", " << row.cfg.t() << ", "
       << algo_name(row.cfg.algorithm) << ", " << row.cfg.adversary << ", "
       << row.cfg.seed << ", " << row.sub_rounds << ", " << row.envelopes
       << ", " << (row.all_pass ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace bla
