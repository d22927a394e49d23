#pragma once

// Timed behaviors: finite sequences of constant segments starting at time 0.
//
// Text format, one segment per `(DUR,PROPS)`, separated by `;` or newlines:
//
//   (3,pq);(2,q);(2,p)
//
// DUR is a positive decimal integer and PROPS a possibly empty run of
// single-letter propositions.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "trematch/expr.hpp"

namespace trematch {

struct Segment {
  Time duration = 1;
  PropSet props = 0;

  bool has(char letter) const noexcept;
  friend bool operator==(const Segment &, const Segment &) = default;
};

/// Maximal interval [lo, hi] on which a Boolean expression holds.
struct Interval {
  Time lo = 0;
  Time hi = 0;
  friend bool operator==(const Interval &, const Interval &) = default;
};

class TimedBehavior {
public:
  TimedBehavior() = default;
  explicit TimedBehavior(std::vector<Segment> segments);

  /// Appends a segment; throws std::invalid_argument if duration < 1.
  void push_back(Segment segment);

  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }
  const std::vector<Segment> &segments() const noexcept { return segments_; }
  const Segment &operator[](std::size_t k) const { return segments_[k]; }

  /// Cumulative timestamp T_k; boundary(0) == 0, boundary(size()) == horizon.
  Time boundary(std::size_t k) const { return boundaries_[k]; }
  const std::vector<Time> &boundaries() const noexcept { return boundaries_; }
  Time horizon() const noexcept { return boundaries_.back(); }

  friend bool operator==(const TimedBehavior &a, const TimedBehavior &b) {
    return a.segments_ == b.segments_;
  }

private:
  std::vector<Segment> segments_;
  std::vector<Time> boundaries_{0};
};

/// Throws BehaviorSyntaxError on malformed text, zero or non-integer durations.
TimedBehavior parse_behavior(std::string_view text);

/// Canonical text: `(D,letters)` joined by `;`, letters sorted a-z then A-Z.
std::string serialize_behavior(const TimedBehavior &b);
std::string serialize_props(PropSet props);

/// Maximal, sorted, non-adjacent intervals on which `e` holds.
std::vector<Interval> eval_boolean(const TimedBehavior &b, const BoolNode &e);

} // namespace trematch
