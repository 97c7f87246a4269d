#pragma once

#include <string>
#include <string_view>

namespace tnbn {

/// Model time, in the network's declared time unit.
using Time = double;

/// A relative span of model time. Whether `hi` is included depends on the
/// interval's position in its node's list: all but the last are [lo, hi),
/// the last is [lo, hi].
struct TimeInterval {
  Time lo = 0;
  Time hi = 0;

  bool valid() const { return lo >= 0 && lo < hi; }
  Time width() const { return hi - lo; }

  /// Containment under the boundary convention; `closed_hi` marks the last
  /// interval of a node.
  bool contains(Time t, bool closed_hi) const {
    return t >= lo && (t < hi || (closed_hi && t == hi));
  }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// The subset of Allen's relations used to tie a node's intervals to its
/// temporal range (si, di, fi) and to each other (m).
enum class AllenRelation {
  starts_inverse,
  during_inverse,
  finishes_inverse,
  meets,
  none,
};

AllenRelation allen_relation(const TimeInterval& a, const TimeInterval& b);

std::string_view to_string(AllenRelation r);

/// Shortest decimal text that parses back to the same double.
std::string format_time(Time t);

/// "[lo,hi]"
std::string format_interval(const TimeInterval& iv);

}  // namespace tnbn
