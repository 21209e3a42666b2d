#include <cstdint>
#include <optional>
#include <vector>

#include "doctest.h"

#include "bla/lattice.hpp"
#include "bla/setgradecast.hpp"
#include "bla/wire.hpp"

using namespace bla;

namespace {

Element el(std::vector<Tag> tags) { return Element(std::move(tags)); }

const Element A = el({Tag{0, 0}});
const Element B = el({Tag{1, 0}});
const Element C = el({Tag{2, 0}});
const Element Z = el({Tag{5, 5}});

Record sgc_rec(int leader, int sub, std::vector<Element> set,
               std::optional<std::int64_t> label = std::nullopt) {
  return Record{RecKind::sgc, leader, sub, std::nullopt, std::move(set),
                label};
}

SgcBank::RowFn fixed_row(const GeneratingSet* row) {
  return [row](int, const std::optional<std::int64_t>&) { return row; };
}

void exchange(std::vector<SgcBank>& banks) {
  for (int sub = 2; sub <= 3; ++sub) {
    std::vector<std::vector<Arrival>> inbox(banks.size());
    for (std::size_t p = 0; p < banks.size(); ++p) {
      const auto recs = sub == 2 ? banks[p].echoes() : banks[p].confirms();
      for (const Record& r : recs)
        for (std::size_t q = 0; q < banks.size(); ++q)
          inbox[q].push_back(Arrival{static_cast<int>(p), r});
    }
    for (std::size_t q = 0; q < banks.size(); ++q)
      banks[q].deliver(sub, inbox[q]);
  }
}

}  // namespace

TEST_SUITE("setgradecast") {

TEST_CASE("confirm keeps every value echoed by at least n-f senders") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A, B, C});
  SgcBank bank(n, f, 0);
  bank.begin(fixed_row(&row));
  bank.deliver(2, {Arrival{0, sgc_rec(3, 2, {A, B, C})},
                   Arrival{1, sgc_rec(3, 2, {A, B, C})},
                   Arrival{2, sgc_rec(3, 2, {A, B})}});
  const auto confirms = bank.confirms();
  REQUIRE(confirms.size() == 1);
  CHECK(confirms[0].leader == 3);
  CHECK(confirms[0].set == std::vector<Element>{A, B});
}

TEST_CASE("grading is per value") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A, B, C});
  SgcBank bank(n, f, 0);
  bank.begin(fixed_row(&row));
  bank.deliver(3, {Arrival{0, sgc_rec(3, 3, {A, B})},
                   Arrival{1, sgc_rec(3, 3, {A, B})},
                   Arrival{2, sgc_rec(3, 3, {A})}});
  const auto res = bank.results();
  REQUIRE(res.size() == static_cast<std::size_t>(n));
  CHECK(res[3].observed);
  CHECK(res[3].scored ==
        std::vector<ScoredValue>{ScoredValue{A, 2}, ScoredValue{B, 1}});
  CHECK(res[0].scored.empty());
}

TEST_CASE("an empty leader set is legal and grades to nothing") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A, B});
  std::vector<SgcBank> banks;
  for (int p = 0; p < n; ++p) {
    banks.emplace_back(n, f, p);
    banks.back().begin(fixed_row(&row));
  }
  const Record lead = banks[0].lead({}, 5);
  for (int p = 0; p < n; ++p) banks[p].deliver(1, {Arrival{0, lead}});
  exchange(banks);
  for (int p = 0; p < n; ++p) {
    const auto res = banks[p].results();
    CHECK(res[0].observed);
    CHECK(res[0].label == 5);
    CHECK(res[0].scored.empty());
  }
}

TEST_CASE("invalid values are stripped from the echo") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A});
  SgcBank bank(n, f, 1);
  bank.begin(fixed_row(&row));
  bank.deliver(1, {Arrival{0, sgc_rec(0, 1, {A, Z})}});
  const auto echoes = bank.echoes();
  REQUIRE(echoes.size() == 1);
  CHECK(echoes[0].set == std::vector<Element>{A});
  CHECK(echoes[0].leader == 0);
}

TEST_CASE("rows are resolved per instance from the leader's label") {
  const int n = 4, f = 1;
  static const GeneratingSet rowA(std::vector<Element>{A});
  static const GeneratingSet rowB(std::vector<Element>{B});
  SgcBank bank(n, f, 1);
  bank.begin([](int, const std::optional<std::int64_t>& label)
                 -> const GeneratingSet* {
    if (!label) return nullptr;
    if (*label == 5) return &rowA;
    if (*label == 7) return &rowB;
    return nullptr;
  });
  bank.deliver(1, {Arrival{0, sgc_rec(0, 1, {A, B}, 7)}});
  const auto echoes = bank.echoes();
  REQUIRE(echoes.size() == 1);
  CHECK(echoes[0].set == std::vector<Element>{B});
  CHECK(echoes[0].label == 7);
  // Echo-only instance: no leader label, resolver answers null, instance is
  // observed but scores nothing.
  bank.deliver(2, {Arrival{0, sgc_rec(2, 2, {A})},
                   Arrival{1, sgc_rec(2, 2, {A})},
                   Arrival{3, sgc_rec(2, 2, {A})}});
  CHECK(bank.results()[2].observed);
  CHECK(bank.results()[2].scored.empty());
}

TEST_CASE("all-correct flow scores the whole led set at 2 with the label") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A, B});
  std::vector<SgcBank> banks;
  for (int p = 0; p < n; ++p) {
    banks.emplace_back(n, f, p);
    banks.back().begin(fixed_row(&row));
  }
  const Record lead = banks[2].lead({A, B}, 9);
  for (int p = 0; p < n; ++p) banks[p].deliver(1, {Arrival{2, lead}});
  exchange(banks);
  for (int p = 0; p < n; ++p) {
    const auto res = banks[p].results();
    CHECK(res[2].observed);
    CHECK(res[2].label == 9);
    CHECK(res[2].scored ==
          std::vector<ScoredValue>{ScoredValue{A, 2}, ScoredValue{B, 2}});
  }
}

TEST_CASE("a leader record must come from the leader") {
  const int n = 4, f = 1;
  static const GeneratingSet row(std::vector<Element>{A});
  SgcBank bank(n, f, 1);
  bank.begin(fixed_row(&row));
  bank.deliver(1, {Arrival{2, sgc_rec(0, 1, {A})}});
  CHECK(bank.echoes().empty());
  bank.deliver(1, {Arrival{0, sgc_rec(0, 1, {A})}});
  CHECK(bank.echoes().size() == 1);
}

}  // TEST_SUITE
