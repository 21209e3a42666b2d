#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "bla/adversary.hpp"
#include "bla/checker.hpp"
#include "bla/rng.hpp"
#include "bla/sim.hpp"
#include "run_helpers.hpp"

using namespace bla;
namespace tu = testutil;

TEST_SUITE("sim") {

TEST_CASE("splitmix64 stream is the published one") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  for (int i = 0; i < 1000; ++i) CHECK(a.below(10) < 10);
  std::vector<int> xs(10);
  std::iota(xs.begin(), xs.end(), 0);
  SplitMix64 s1(7), s2(7);
  std::vector<int> ys = xs;
  s1.shuffle(xs);
  s2.shuffle(ys);
  CHECK(xs == ys);
  std::sort(ys.begin(), ys.end());
  std::vector<int> sorted(10);
  std::iota(sorted.begin(), sorted.end(), 0);
  CHECK(ys == sorted);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("identical config and seed give byte-identical reports") {
  for (AlgoKind algo : {AlgoKind::sqrtf, AlgoKind::logn, AlgoKind::logf}) {
    const RunConfig cfg =
        tu::make_cfg(7, {1, 4}, algo, "random_within_safe(3)", 12345);
    const Transcript t1 = simulate(cfg);
    const Transcript t2 = simulate(cfg);
    CHECK(t1.digests == t2.digests);
    const auto r1 = make_report(t1, check_all(t1)).dump(2);
    const auto r2 = make_report(t2, check_all(t2)).dump(2);
    CHECK(r1 == r2);
  }
}

TEST_CASE("broadcast sub-rounds carry one envelope per ordered pair") {
  const RunConfig cfg = tu::make_cfg(4, {}, AlgoKind::sqrtf, "silent", 1);
  const Transcript tr = simulate(cfg);
  REQUIRE(tr.env_total.size() == static_cast<std::size_t>(tr.sub_rounds));
  for (int s = 0; s < tr.sub_rounds; ++s) {
    CHECK(tr.env_total[s] == 16);  // n senders to n recipients, self included
    CHECK(tr.env_self[s] == 4);
    CHECK(tr.env_correct[s] == 16);
  }
  CHECK(tr.envelopes_total() == 16 * tr.sub_rounds);
  CHECK(tr.envelopes_no_self() == 12 * tr.sub_rounds);
}

TEST_CASE("a silent process sends no envelopes") {
  const RunConfig cfg = tu::make_cfg(4, {2}, AlgoKind::sqrtf, "silent", 1);
  const Transcript tr = simulate(cfg);
  for (int s = 0; s < tr.sub_rounds; ++s) {
    CHECK(tr.env_total[s] == 12);  // 3 correct senders
    CHECK(tr.env_correct[s] == 12);
    CHECK(tr.env_self[s] == 3);
  }
}

TEST_CASE("byzantine envelopes count in the total but not the correct tally") {
  const RunConfig cfg =
      tu::make_cfg(4, {3}, AlgoKind::sqrtf, "inject_fresh", 2);
  const Transcript tr = simulate(cfg);
  // Sub-round 1: the faulty leader broadcasts too.
  CHECK(tr.env_total[0] == 16);
  CHECK(tr.env_correct[0] == 12);
  for (int s = 0; s < tr.sub_rounds; ++s)
    CHECK(tr.env_correct[s] <= tr.env_total[s]);
}

TEST_CASE("config json round-trips and rejects malformed documents") {
  const RunConfig cfg = tu::make_cfg(7, {0, 3}, AlgoKind::logf,
                                     "crash_at(5)", 99);
  std::string err;
  const auto back = RunConfig::from_json(cfg.to_json(), &err);
  REQUIRE(back);
  CHECK(back->to_json().dump() == cfg.to_json().dump());

  auto j = cfg.to_json();
  j["bogus"] = 1;
  CHECK_FALSE(RunConfig::from_json(j, &err));
  CHECK(err == "unknown config field: bogus");

  j = cfg.to_json();
  j.erase("seed");
  CHECK_FALSE(RunConfig::from_json(j, &err));
  CHECK(err == "missing config field: seed");

  j = cfg.to_json();
  j["algorithm"] = "quantum";
  CHECK_FALSE(RunConfig::from_json(j, &err));

  j = cfg.to_json();
  j["inputs"][0] = "not-an-element";
  CHECK_FALSE(RunConfig::from_json(j, &err));

  j = cfg.to_json();
  j["byzantine_ids"] = {1, 1};
  CHECK_FALSE(RunConfig::from_json(j, &err));

  j = cfg.to_json();
  j["seed"] = -5;
  CHECK_FALSE(RunConfig::from_json(j, &err));
}

TEST_CASE("config validation enforces the model bounds") {
  RunConfig cfg = tu::make_cfg(7, {0, 3}, AlgoKind::sqrtf, "silent", 1);
  CHECK_FALSE(validate_config(cfg));

  RunConfig bad = cfg;
  bad.n = 6;
  bad.inputs.pop_back();
  CHECK(validate_config(bad));  // 6 < 3*2+1

  bad = cfg;
  bad.byzantine_ids = {0, 1, 2};
  CHECK(validate_config(bad));  // t > f

  bad = cfg;
  bad.byzantine_ids = {7};
  CHECK(validate_config(bad));  // id out of range

  bad = cfg;
  bad.adversary = "gremlin";
  CHECK(validate_config(bad));

  bad = cfg;
  bad.universe_size = 0;
  CHECK(validate_config(bad));

  bad = cfg;
  bad.inputs[0] = Element(std::vector<Tag>{Tag{90, 0}});
  CHECK(validate_config(bad));  // tag outside the universe

  CHECK_THROWS_AS(simulate(bad), std::invalid_argument);
}

TEST_CASE("adversary specs parse names and integer arguments") {
  const auto names = builtin_adversaries();
  CHECK(names.size() == 7);
  for (const char* spec :
       {"silent", "crash_at(4)", "terrible(2)", "equivocate_split",
        "inject_fresh", "lie_label", "random_within_safe(9)"}) {
    CHECK(make_adversary(spec, 1) != nullptr);
  }
  CHECK(make_adversary("silent(3)", 1) == nullptr);   // takes no argument
  CHECK(make_adversary("crash_at", 1) == nullptr);    // needs an argument
  CHECK(make_adversary("crash_at(0)", 1) == nullptr);  // round is 1-based
  CHECK(make_adversary("nope", 1) == nullptr);
  CHECK(make_adversary("crash_at(x)", 1) == nullptr);
  const auto parsed = parse_adversary("terrible(2)");
  REQUIRE(parsed);
  CHECK(parsed->first == "terrible");
  CHECK(parsed->second == 2);
}

TEST_CASE("reports expose the documented key set") {
  const RunConfig cfg = tu::make_cfg(4, {1}, AlgoKind::sqrtf, "silent", 5);
  const Transcript tr = simulate(cfg);
  const auto rep = make_report(tr, check_all(tr));
  for (const char* k :
       {"config", "sub_rounds", "outer_rounds", "envelopes", "outputs",
        "decision_rounds", "term_rounds", "recorded_byzantine_values",
        "digests", "verdicts", "all_pass"})
    CHECK(rep.contains(k));
  CHECK(rep["all_pass"] == true);
  CHECK(rep["outputs"][1].is_null());  // byzantine slot
  CHECK(rep["envelopes"]["total"] == tr.envelopes_total());
  // Log algorithms have no termination-round column.
  const RunConfig lcfg = tu::make_cfg(4, {1}, AlgoKind::logn, "silent", 5);
  const Transcript ltr = simulate(lcfg);
  CHECK_FALSE(make_report(ltr, {}).contains("term_rounds"));
}

TEST_CASE("every adversary still leaves all checks passing") {
  for (const char* adv :
       {"silent", "crash_at(4)", "terrible(2)", "equivocate_split",
        "inject_fresh", "lie_label", "random_within_safe(1)"}) {
    for (AlgoKind algo : {AlgoKind::sqrtf, AlgoKind::logn, AlgoKind::logf}) {
      const RunConfig cfg = tu::make_cfg(10, {2, 5, 9}, algo, adv, 77);
      const Transcript tr = simulate(cfg);
      for (const Verdict& v : check_all(tr)) {
        CAPTURE(adv);
        CAPTURE(algo_name(algo));
        CAPTURE(v.property);
        CAPTURE(v.witness);
        CHECK(v.pass);
      }
    }
  }
}

}  // TEST_SUITE
