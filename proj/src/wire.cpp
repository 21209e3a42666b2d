#include "bla/wire.hpp"

namespace bla {

std::string encode_record(const Record& r) {
  std::string out;
  switch (r.kind) {
    case RecKind::gc: out = "gc"; break;
    case RecKind::sgc: out = "sgc"; break;
    case RecKind::cx: out = "cx"; break;
  }
  out += '/';
  out += std::to_string(r.leader);
  out += '/';
  out += std::to_string(r.sub);
  if (r.value) {
    out += "/v=";
    out += r.value->str();
  }
  if (!r.set.empty() || r.kind != RecKind::gc) {
    out += "/s=";
    for (const Element& e : r.set) out += e.str();
  }
  if (r.label) {
    out += "/l=";
    out += std::to_string(*r.label);
  }
  return out;
}

}  // namespace bla
