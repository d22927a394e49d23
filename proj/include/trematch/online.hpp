#pragma once

// Streaming matcher.
//
// Each node of the expression keeps only what later segments can still
// extend: atoms remember where their current run began, concatenations
// remember the left-hand matches that may still meet a right-hand match,
// repetitions remember their own partial chains. After every committed
// segment each node also reports the earliest begin any of its future
// matches can have, which bounds how much history the parent keeps.
//
// A segment is committed only once the next one is seen, because a
// right-anchored atom matches at the segment end only if that end is a
// falling edge. Meanwhile the engine emits every match that holds whatever
// comes next, so each emission is final.

#include <cstddef>
#include <optional>
#include <vector>

#include "trematch/behavior.hpp"
#include "trematch/expr.hpp"
#include "trematch/zone.hpp"

namespace trematch {

class OnlineMatcher {
public:
  /// Throws std::invalid_argument on a null expression. `fixpoint_cap`
  /// overrides the per-segment repetition round limit.
  explicit OnlineMatcher(const Regex &e,
                         std::optional<std::size_t> fixpoint_cap = {});

  /// Consumes one segment. Returns the zones confirmed by it: every match
  /// ending by the previous frontier, and every match ending inside the
  /// new segment that does not depend on an edge at the new frontier.
  /// Throws std::invalid_argument on a zero duration and std::logic_error
  /// after flush().
  ZoneSet feed(const Segment &segment);

  /// Ends the stream; the frontier becomes a falling edge for everything
  /// holding in the last segment. Further feed() calls throw.
  ZoneSet flush();

  Time frontier() const noexcept { return frontier_; }
  std::size_t segments_seen() const noexcept { return segments_seen_; }
  bool flushed() const noexcept { return flushed_; }
  const Regex &expression() const noexcept { return expr_; }

  /// Number of zones and run markers retained between feeds.
  std::size_t state_size() const noexcept;

private:
  struct Node {
    RegexNode::Kind kind;
    BoolExpr boolean;
    bool left_anchor = false;
    bool right_anchor = false;
    Time lo = 0;
    Time hi = 0;
    int lhs = -1;
    int rhs = -1;
    bool lhs_nullable = false;
    bool rhs_nullable = false;
    bool nullable = false;

    // Retained state.
    std::optional<Time> run_start;
    ZoneSet history;
  };

  struct Step {
    Time t_prev = 0;
    Time t_cur = 0;
    std::optional<PropSet> prev;
    PropSet cur = 0;
    std::optional<PropSet> next; // nullopt: end of behavior
    bool commit = false;
  };

  struct Output {
    ZoneSet zones;
    Time live_from = 0; // lower bound on begins of matches ending later
  };

  int compile(const RegexNode &e);
  // `floor`: ancestors have no use for matches beginning before it.
  Output step(int index, const Step &s, Time floor);
  ZoneSet run(const Step &s);
  ZoneSet emit(std::vector<Zone> zones);

  Regex expr_;
  std::vector<Node> nodes_;
  int root_ = -1;

  std::optional<Segment> held_;           // received but not committed
  std::optional<PropSet> last_committed_; // valuation of the previous segment
  Time committed_ = 0;                    // frontier of committed segments
  Time frontier_ = 0;
  std::size_t segments_seen_ = 0;
  bool flushed_ = false;
  std::optional<std::size_t> fixpoint_cap_;
  ZoneSet recent_; // emitted zones still able to subsume new ones
};

} // namespace trematch
