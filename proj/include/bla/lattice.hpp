#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bla {

// A lattice element is a finite set of tags; join is set union, the order is
// set inclusion. Tags are (origin, nonce) pairs so that every process can mint
// values that are distinguishable across processes and rounds.
struct Tag {
  int origin = 0;
  int nonce = 0;
  auto operator<=>(const Tag&) const = default;
};

class Element {
 public:
  Element() = default;
  // Normalizes: sorts and deduplicates.
  explicit Element(std::vector<Tag> tags);

  const std::vector<Tag>& tags() const { return tags_; }
  bool empty() const { return tags_.empty(); }
  // Height of an element in the powerset lattice is its cardinality.
  int height() const { return static_cast<int>(tags_.size()); }

  // Canonical text form "{0:0,2:1}"; the empty set renders as "{}".
  std::string str() const;
  static std::optional<Element> parse(std::string_view text);

  // The canonical total order: lexicographic over the sorted tag list.
  auto operator<=>(const Element&) const = default;

 private:
  std::vector<Tag> tags_;  // sorted, unique
};

bool leq(const Element& a, const Element& b);  // subset test
bool comparable(const Element& a, const Element& b);
Element join(const Element& a, const Element& b);
// Join of a finite family; the empty family yields the bottom element {}.
Element join_all(const std::vector<Element>& xs);

// Tag capacity: origins 0..n-1, nonces 0..nonces_per_origin-1.
struct Universe {
  int n = 0;
  int nonces_per_origin = 0;
  bool valid_tag(const Tag& t) const {
    return t.origin >= 0 && t.origin < n && t.nonce >= 0 &&
           t.nonce < nonces_per_origin;
  }
  bool valid_element(const Element& e) const;
  // Height of the full lattice: total number of distinct tags.
  int height() const { return n * nonces_per_origin; }
};

// A finite set of elements, kept sorted and unique. Serves two roles: as a
// plain value set with exact membership (safe rows of the set-broadcast
// algorithms) and as the generating set of a join-closed family (safe
// lattices of the gradecast filter).
class GeneratingSet {
 public:
  GeneratingSet() = default;
  explicit GeneratingSet(std::vector<Element> members);

  const std::vector<Element>& members() const { return members_; }
  bool contains(const Element& e) const;  // exact membership
  void insert(const Element& e);
  void insert_all(const std::vector<Element>& es);
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  std::string str() const;

  auto operator<=>(const GeneratingSet&) const = default;

 private:
  std::vector<Element> members_;  // sorted, unique
};

// True iff v lies in the join-closed family generated by g. The bottom
// element is always a member (it is the empty join). Test: the join of all
// members of g below v must equal v, with at least one such member unless v
// is bottom.
bool member_of_generated(const GeneratingSet& g, const Element& v);

// FNV-1a over bytes; used for report digests and config hashes.
std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

}  // namespace bla
