#pragma once

#include <cstddef>
#include <optional>

#include "trematch/behavior.hpp"
#include "trematch/expr.hpp"
#include "trematch/zone.hpp"

namespace trematch {

struct OfflineOptions {
  /// Iteration cap for repetition fixpoints; default_fixpoint_cap() if unset.
  std::optional<std::size_t> fixpoint_cap;
};

/// Generous safety cap on fixpoint rounds for a behavior. Each round appends
/// one more repetition; chains longer than this cannot add new periods.
std::size_t default_fixpoint_cap(const TimedBehavior &b) noexcept;

/// Matches of a (possibly anchored) Boolean atom. Behavior start and end
/// count as rising and falling edges respectively.
ZoneSet match_atom(const TimedBehavior &b, const BoolNode &e, bool left_anchor,
                   bool right_anchor);

/// Least fixpoint of X = m | m;X. Throws InvariantViolation past `cap`
/// rounds.
ZoneSet plus_fixpoint(const ZoneSet &m, std::size_t cap);

/// Full match set of `e` over `b`. Star nodes are treated as their
/// desugared form.
ZoneSet match_expr(const TimedBehavior &b, const Regex &e,
                   const OfflineOptions &options = {});

} // namespace trematch
