#include "bla/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace bla {

Element::Element(std::vector<Tag> tags) : tags_(std::move(tags)) {
  std::sort(tags_.begin(), tags_.end());
  tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
}

std::string Element::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tags_[i].origin);
    out += ':';
    out += std::to_string(tags_[i].nonce);
  }
  out += '}';
  return out;
}

namespace {

bool parse_int(std::string_view s, std::size_t& pos, int& out) {
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr == first) return false;
  pos += static_cast<std::size_t>(ptr - first);
  return true;
}

}  // namespace

std::optional<Element> Element::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    return std::nullopt;
  std::vector<Tag> tags;
  std::size_t pos = 1;
  const std::size_t end = text.size() - 1;
  while (pos < end) {
    Tag t;
    if (!parse_int(text, pos, t.origin)) return std::nullopt;
    if (pos >= end || text[pos] != ':') return std::nullopt;
    ++pos;
    if (!parse_int(text, pos, t.nonce)) return std::nullopt;
    tags.push_back(t);
    if (pos == end) break;
    if (text[pos] != ',') return std::nullopt;
    ++pos;
    if (pos == end) return std::nullopt;  // trailing comma
  }
  return Element(std::move(tags));
}

bool leq(const Element& a, const Element& b) {
  return std::includes(b.tags().begin(), b.tags().end(), a.tags().begin(),
                       a.tags().end());
}

bool comparable(const Element& a, const Element& b) {
  return leq(a, b) || leq(b, a);
}

Element join(const Element& a, const Element& b) {
  std::vector<Tag> merged;
  merged.reserve(a.tags().size() + b.tags().size());
  std::merge(a.tags().begin(), a.tags().end(), b.tags().begin(),
             b.tags().end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return Element(std::move(merged));
}

Element join_all(const std::vector<Element>& xs) {
  Element acc;
  for (const Element& x : xs) acc = join(acc, x);
  return acc;
}

bool Universe::valid_element(const Element& e) const {
  for (const Tag& t : e.tags())
    if (!valid_tag(t)) return false;
  return true;
}

GeneratingSet::GeneratingSet(std::vector<Element> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

bool GeneratingSet::contains(const Element& e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

void GeneratingSet::insert(const Element& e) {
  auto it = std::lower_bound(members_.begin(), members_.end(), e);
  if (it == members_.end() || *it != e) members_.insert(it, e);
}

void GeneratingSet::insert_all(const std::vector<Element>& es) {
  for (const Element& e : es) insert(e);
}

std::string GeneratingSet::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ' ';
    out += members_[i].str();
  }
  out += ']';
  return out;
}

bool member_of_generated(const GeneratingSet& g, const Element& v) {
  if (v.empty()) return true;  // bottom is the empty join
  Element acc;
  bool any = false;
  for (const Element& m : g.members()) {
    if (leq(m, v)) {
      acc = join(acc, m);
      any = true;
    }
  }
  return any && acc == v;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

}  // namespace bla
