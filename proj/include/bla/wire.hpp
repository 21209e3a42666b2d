#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bla/lattice.hpp"

namespace bla {

// One protocol message record. All concurrent instances between a sender and
// a receiver share a single envelope per sub-round; the envelope payload is a
// list of these records.
enum class RecKind : std::uint8_t { gc, sgc, cx };

struct Record {
  RecKind kind = RecKind::gc;
  int leader = -1;  // instance id for gc/sgc; sender id for cx
  int sub = 0;      // 1..3 within a gradecast phase; 4 for the exchange step
  std::optional<Element> value;        // gc payload
  std::vector<Element> set;            // sgc/cx payload
  std::optional<std::int64_t> label;   // sgc group label / cx target label

  bool operator==(const Record&) const = default;
};

inline constexpr int kBroadcast = -1;

struct Send {
  int to = kBroadcast;
  Record rec;
};

struct Arrival {
  int from = -1;
  Record rec;
};

struct Envelope {
  int from = -1;
  int to = -1;
  int sub_round = 0;
  std::vector<Record> payload;
};

// Canonical text form for digests and traces.
std::string encode_record(const Record& r);

}  // namespace bla
