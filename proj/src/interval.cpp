#include "tnbn/interval.hpp"

#include <charconv>

namespace tnbn {

AllenRelation allen_relation(const TimeInterval& a, const TimeInterval& b) {
  if (a.lo == b.lo && a.hi > b.hi) return AllenRelation::starts_inverse;
  if (a.lo < b.lo && a.hi > b.hi) return AllenRelation::during_inverse;
  if (a.hi == b.hi && a.lo < b.lo) return AllenRelation::finishes_inverse;
  if (a.hi == b.lo) return AllenRelation::meets;
  return AllenRelation::none;
}

std::string_view to_string(AllenRelation r) {
  switch (r) {
    case AllenRelation::starts_inverse: return "si";
    case AllenRelation::during_inverse: return "di";
    case AllenRelation::finishes_inverse: return "fi";
    case AllenRelation::meets: return "m";
    case AllenRelation::none: return "none";
  }
  return "none";
}

std::string format_time(Time t) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

std::string format_interval(const TimeInterval& iv) {
  return "[" + format_time(iv.lo) + "," + format_time(iv.hi) + "]";
}

}  // namespace tnbn
