#pragma once

// Zones over match periods (t, t'): convex sets cut out by lower and upper
// bounds on the begin t, the end t' and the duration t' - t. Internally a
// zone is a 3x3 difference-bound matrix over {0, t, t'}; the canonical form
// is its shortest-path closure, on which equality and inclusion are
// entrywise.

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "trematch/expr.hpp"

namespace trematch {

/// Upper bound on a difference x - y: `x - y <= v` or `x - y < v`, or none.
/// Ordered by tightness (smaller is tighter; at equal value strict is
/// tighter). Sum adds values and ORs strictness.
class Bound {
public:
  constexpr Bound() noexcept : raw_(kInfinityRaw) {}

  static constexpr Bound le(Time v) noexcept { return Bound(v * 2 + 1); }
  static constexpr Bound lt(Time v) noexcept { return Bound(v * 2); }
  static constexpr Bound infinity() noexcept { return Bound(kInfinityRaw); }

  constexpr bool is_infinite() const noexcept { return raw_ == kInfinityRaw; }
  constexpr Time value() const noexcept { return raw_ >> 1; }
  constexpr bool strict() const noexcept { return (raw_ & 1) == 0; }

  friend constexpr Bound operator+(Bound a, Bound b) noexcept {
    if (a.is_infinite() || b.is_infinite())
      return infinity();
    return Bound(((a.raw_ & ~std::int64_t{1}) + (b.raw_ & ~std::int64_t{1})) |
                 (a.raw_ & b.raw_ & 1));
  }
  friend constexpr auto operator<=>(Bound, Bound) noexcept = default;

private:
  static constexpr std::int64_t kInfinityRaw =
      std::numeric_limits<std::int64_t>::max();
  constexpr explicit Bound(std::int64_t raw) noexcept : raw_(raw) {}
  std::int64_t raw_;
};

/// A one-sided constraint on a single quantity as a user reads it:
/// `value <= x` / `value < x` for lower limits, `x <= value` / `x < value`
/// for upper ones.
struct Limit {
  Time value = 0;
  bool strict = false;
  bool infinite = false;

  static constexpr Limit closed(Time v) noexcept { return {v, false, false}; }
  static constexpr Limit open(Time v) noexcept { return {v, true, false}; }
  static constexpr Limit none() noexcept { return {0, false, true}; }
  friend bool operator==(const Limit &, const Limit &) = default;
};

class Zone {
public:
  /// The unconstrained plane.
  Zone() noexcept;

  /// Raw constraint system; not tightened.
  Zone(Limit b_lo, Limit b_hi, Limit e_lo, Limit e_hi, Limit d_lo,
       Limit d_hi) noexcept;

  Limit b_lo() const noexcept { return lower(0, 1); }
  Limit b_hi() const noexcept { return upper(1, 0); }
  Limit e_lo() const noexcept { return lower(0, 2); }
  Limit e_hi() const noexcept { return upper(2, 0); }
  Limit d_lo() const noexcept { return lower(1, 2); }
  Limit d_hi() const noexcept { return upper(2, 1); }

  /// Bound on x_i - x_j with x_0 = 0, x_1 = t, x_2 = t'.
  Bound at(int i, int j) const noexcept { return m_[i * 3 + j]; }
  void set(int i, int j, Bound b) noexcept { m_[i * 3 + j] = b; }

  /// Lexicographic key over (bmin, bmin_strict, bmax, bmax_strict, ...,
  /// dmax_strict); infinite limits map to the extreme integers.
  std::array<Time, 12> key() const noexcept;

  friend bool operator==(const Zone &a, const Zone &b) noexcept {
    return a.m_ == b.m_;
  }

private:
  Limit lower(int i, int j) const noexcept;
  Limit upper(int i, int j) const noexcept;

  std::array<Bound, 9> m_;
};

/// Canonical order: lexicographic on Zone::key().
bool zone_less(const Zone &a, const Zone &b) noexcept;

/// Sub-periods of [a, b]: a <= t < t' <= b. Throws std::invalid_argument if
/// a >= b.
Zone make_triangle(Time a, Time b);

/// All-pairs tightest equivalent zone, or nullopt if empty.
std::optional<Zone> tighten(const Zone &z) noexcept;

std::optional<Zone> intersect(const Zone &z1, const Zone &z2) noexcept;

/// Relational composition { (t, t') | exists s: (t, s) in z1, (s, t') in z2 }.
std::optional<Zone> compose(const Zone &z1, const Zone &z2) noexcept;

std::optional<Zone> restrict_duration(const Zone &z, Time m, Time n) noexcept;

/// z1 is a superset of z2. Both must be canonical and nonempty.
bool includes(const Zone &z1, const Zone &z2) noexcept;

/// Membership of (t_num / den, tp_num / den).
bool contains_point(const Zone &z, Time t_num, Time tp_num,
                    Time den = 1) noexcept;

/// Finite union of canonical zones with no member including another, kept
/// in canonical order, plus a flag for the zero-duration diagonal.
class ZoneSet {
public:
  ZoneSet() = default;

  /// Drops empty inputs after tightening, then subsumption-normalizes.
  static ZoneSet from_zones(std::vector<Zone> zones, bool nullable = false);

  /// Adds a canonical nonempty zone unless some member includes it; removes
  /// members it includes. Returns whether it was added.
  bool insert(const Zone &z);

  bool nullable() const noexcept { return nullable_; }
  void set_nullable(bool v) noexcept { nullable_ = v; }

  std::size_t size() const noexcept { return zones_.size(); }
  bool empty() const noexcept { return zones_.empty(); }
  const std::vector<Zone> &zones() const noexcept { return zones_; }
  const Zone &operator[](std::size_t i) const { return zones_[i]; }
  auto begin() const noexcept { return zones_.begin(); }
  auto end() const noexcept { return zones_.end(); }

  /// Point membership; the diagonal t == t' counts only if nullable.
  bool contains_point(Time t_num, Time tp_num, Time den = 1) const noexcept;

  /// Whether some member includes z.
  bool covers(const Zone &z) const noexcept;

  /// Visits every member whose begin range overlaps [lo, hi] (and possibly
  /// a few that do not).
  template <class F> void for_each_begin_overlap(Time lo, Time hi, F &&f) const;

  friend bool operator==(const ZoneSet &a, const ZoneSet &b) noexcept {
    return a.nullable_ == b.nullable_ && a.zones_ == b.zones_;
  }

private:
  void refresh_extent() noexcept;

  std::vector<Zone> zones_;
  bool nullable_ = false;
  // Largest b_hi - b_lo over members; nullopt if some member is unbounded.
  std::optional<Time> max_begin_extent_ = Time{0};
};

/// Union, normalized; nullable if either is.
ZoneSet unite(const ZoneSet &a, const ZoneSet &b);
/// Pairwise composition of members (the nullable flags are ignored).
ZoneSet compose_all(const ZoneSet &a, const ZoneSet &b);
/// Pairwise intersection of members (the nullable flags are ignored).
ZoneSet intersect_all(const ZoneSet &a, const ZoneSet &b);
ZoneSet restrict_all(const ZoneSet &a, Time m, Time n);

// ---------------------------------------------------------------------------

template <class F>
void ZoneSet::for_each_begin_overlap(Time lo, Time hi, F &&f) const {
  if (!max_begin_extent_) {
    for (const Zone &z : zones_)
      f(z);
    return;
  }
  constexpr Time kMin = std::numeric_limits<Time>::min() / 4;
  Time from = lo <= kMin + *max_begin_extent_ ? kMin : lo - *max_begin_extent_;
  auto first = zones_.begin();
  {
    auto count = zones_.size();
    while (count > 0) {
      auto step = count / 2;
      auto it = first + static_cast<std::ptrdiff_t>(step);
      if (it->b_lo().value < from) {
        first = it + 1;
        count -= step + 1;
      } else {
        count = step;
      }
    }
  }
  for (auto it = first; it != zones_.end() && it->b_lo().value <= hi; ++it)
    f(*it);
}

} // namespace trematch
