#include <algorithm>
#include <vector>

#include "doctest.h"

#include "bla/bla_logn.hpp"
#include "bla/sim.hpp"
#include "run_helpers.hpp"

using namespace bla;
namespace tu = testutil;

TEST_SUITE("logn") {

TEST_CASE("iteration count is ceil(log2 n)") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
  CHECK(ceil_log2(16) == 4);
  CHECK(logn_iterations(7) == 3);
}

TEST_CASE("groups split lower-half slaves, upper-half masters") {
  CHECK(groups_at_level(4, 0) == std::vector<IdInterval>{{0, 4}});
  CHECK(groups_at_level(4, 1) == std::vector<IdInterval>{{0, 2}, {2, 4}});
  CHECK(groups_at_level(4, 2) ==
        std::vector<IdInterval>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  // Odd sizes put the extra id in the slave half.
  CHECK(groups_at_level(7, 1) == std::vector<IdInterval>{{0, 4}, {4, 7}});
  CHECK(split_point(IdInterval{0, 7}) == 4);
  CHECK(split_point(IdInterval{0, 3}) == 2);
  CHECK(is_slave(IdInterval{0, 4}, 1));
  CHECK_FALSE(is_slave(IdInterval{0, 4}, 2));
  // Singletons have no slaves.
  CHECK_FALSE(is_slave(IdInterval{2, 3}, 2));
  CHECK(group_at(4, 1, 3) == IdInterval{2, 4});
  CHECK(group_at(4, 0, 3) == IdInterval{0, 4});
}

TEST_CASE("sub-round counts are exactly 3 + 3 ceil(log2 n)") {
  for (int n : {4, 8, 16}) {
    const RunConfig cfg = tu::make_cfg(n, {}, AlgoKind::logn, "silent", 1);
    const Transcript tr = simulate(cfg);
    CHECK(tr.sub_rounds == 3 + 3 * ceil_log2(n));
    CHECK(tr.outer_rounds == 1 + ceil_log2(n));
    CHECK(tr.ln.size() == static_cast<std::size_t>(tr.outer_rounds));
  }
}

TEST_CASE("all-correct distinct inputs yield the nested output chain") {
  const RunConfig cfg = tu::make_cfg(4, {}, AlgoKind::logn, "silent", 1);
  const Transcript tr = simulate(cfg);
  // Initial value sets are the own inputs.
  for (int i = 0; i < 4; ++i)
    CHECK(tr.ln[0][i].V == std::vector<Element>{tu::input_of(i)});
  // Ids 0 and 1 end with {x0,x1}; id 2 adds x2; id 3 holds everything.
  CHECK(tr.outputs[0] == tu::join_inputs(0, 2));
  CHECK(tr.outputs[1] == tu::join_inputs(0, 2));
  CHECK(tr.outputs[2] == tu::join_inputs(0, 3));
  CHECK(tr.outputs[3] == tu::join_inputs(0, 4));
}

TEST_CASE("identical inputs agree everywhere") {
  const RunConfig cfg =
      tu::make_cfg(8, {}, AlgoKind::logn, "silent", 1, false);
  const Transcript tr = simulate(cfg);
  for (int i = 0; i < 8; ++i) CHECK(tr.outputs[i] == tu::input_of(0));
}

TEST_CASE("a singleton group's member keeps its value set") {
  // n=3: the second iteration splits [0,2) and leaves [2,3) alone.
  const RunConfig cfg = tu::make_cfg(3, {}, AlgoKind::logn, "silent", 1);
  const Transcript tr = simulate(cfg);
  CHECK(tr.sub_rounds == 3 + 3 * 2);
  CHECK(tr.ln[1][2].V == tr.ln[2][2].V);
  CHECK(tr.outputs[0] == tu::join_inputs(0, 2));
  CHECK(tr.outputs[1] == tu::join_inputs(0, 2));
  CHECK(tr.outputs[2] == tu::join_inputs(0, 3));
}

TEST_CASE("final value sets are nested across correct processes") {
  const RunConfig cfg =
      tu::make_cfg(10, {1, 4, 8}, AlgoKind::logn, "equivocate_split", 5);
  const Transcript tr = simulate(cfg);
  const auto& last = tr.ln.back();
  for (int i : tr.correct)
    for (int j : tr.correct) {
      const GeneratingSet a(last[i].V);
      const GeneratingSet b(last[j].V);
      const bool ab = std::includes(b.members().begin(), b.members().end(),
                                    a.members().begin(), a.members().end());
      const bool ba = std::includes(a.members().begin(), a.members().end(),
                                    b.members().begin(), b.members().end());
      CHECK((ab || ba));
    }
}

TEST_CASE("own input stays in the value set") {
  const RunConfig cfg =
      tu::make_cfg(7, {0, 6}, AlgoKind::logn, "inject_fresh", 9);
  const Transcript tr = simulate(cfg);
  for (int i : tr.correct) {
    bool found = false;
    for (const Element& v : tr.ln.back()[i].V)
      found = found || v == tu::input_of(i);
    CHECK(found);
    CHECK(leq(tu::input_of(i), *tr.outputs[i]));
  }
}

}  // TEST_SUITE
