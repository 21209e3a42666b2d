#pragma once

// Brute-force reference for membership in the join-closed family generated
// by a set of elements, usable for tag universes small enough that every
// element fits in a bitmask (up to 6 tags).

#include <cstdint>
#include <vector>

#include "bla/lattice.hpp"

namespace testutil {

// Tag with index k in a universe laid out as 2 nonces per origin.
inline bla::Tag tag_at(int k) { return bla::Tag{k / 2, k % 2}; }

inline bla::Element element_from_mask(unsigned mask, int tag_count) {
  std::vector<bla::Tag> tags;
  for (int k = 0; k < tag_count; ++k)
    if (mask >> k & 1u) tags.push_back(tag_at(k));
  return bla::Element(std::move(tags));
}

// Joins of all nonempty subsets of `members` (elements as bitmasks), as a
// bitset indexed by element mask.
inline std::uint64_t or_closure(const std::vector<unsigned>& members) {
  std::uint64_t reach = 0;
  for (unsigned m : members) {
    std::uint64_t add = 1ull << m;
    for (unsigned r = 0; r < 64; ++r)
      if (reach >> r & 1ull) add |= 1ull << (r | m);
    reach |= add;
  }
  return reach;
}

// Bottom is the empty join, hence always a member.
inline bool member_oracle(std::uint64_t closure, unsigned v_mask) {
  return v_mask == 0 || ((closure >> v_mask) & 1ull) != 0;
}

}  // namespace testutil
