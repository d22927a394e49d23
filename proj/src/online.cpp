#include "trematch/online.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "trematch/error.hpp"

namespace trematch {

namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

// Keeps the zones holding some period that ends after `t`.
ZoneSet ending_after(const ZoneSet &s, Time t) {
  std::vector<Zone> kept;
  kept.reserve(s.size());
  for (const Zone &z : s) {
    Limit hi = z.e_hi();
    if (hi.infinite || hi.value > t)
      kept.push_back(z);
  }
  if (kept.size() == s.size())
    return s;
  return ZoneSet::from_zones(std::move(kept), s.nullable());
}

// Drops history that cannot meet a continuation beginning at or after
// `live_from`.
ZoneSet prune(const ZoneSet &s, Time live_from) {
  std::vector<Zone> kept;
  kept.reserve(s.size());
  for (const Zone &z : s) {
    Limit hi = z.e_hi();
    if (hi.infinite || hi.value >= live_from)
      kept.push_back(z);
  }
  if (kept.size() == s.size())
    return s;
  return ZoneSet::from_zones(std::move(kept));
}

// Drops history whose every begin lies before `floor`.
ZoneSet drop_begun_before(const ZoneSet &s, Time floor) {
  std::vector<Zone> kept;
  kept.reserve(s.size());
  for (const Zone &z : s) {
    Limit hi = z.b_hi();
    if (hi.infinite || hi.value >= floor)
      kept.push_back(z);
  }
  if (kept.size() == s.size())
    return s;
  return ZoneSet::from_zones(std::move(kept));
}

Time earliest_begin(const ZoneSet &s) {
  Time out = kNever;
  for (const Zone &z : s) {
    Limit lo = z.b_lo();
    out = std::min(out, lo.infinite ? std::numeric_limits<Time>::min() : lo.value);
  }
  return out;
}

Zone atom_zone(Time a, Time c, bool left_anchor, bool right_anchor) {
  Zone z(Limit::closed(a), left_anchor ? Limit::closed(a) : Limit::open(c),
         right_anchor ? Limit::closed(c) : Limit::open(a), Limit::closed(c),
         Limit::open(0), Limit::closed(c - a));
  return *tighten(z);
}

} // namespace

OnlineMatcher::OnlineMatcher(const Regex &e,
                             std::optional<std::size_t> fixpoint_cap)
    : fixpoint_cap_(fixpoint_cap) {
  if (!e)
    throw std::invalid_argument("null expression");
  expr_ = desugar(e);
  root_ = compile(*expr_);
}

int OnlineMatcher::compile(const RegexNode &e) {
  Node n;
  n.kind = e.kind();
  n.nullable = nullable(e);
  switch (e.kind()) {
  case RegexNode::Kind::Atom:
    n.boolean = e.boolean();
    n.left_anchor = e.left_anchor();
    n.right_anchor = e.right_anchor();
    break;
  case RegexNode::Kind::Concat:
  case RegexNode::Kind::Choice:
  case RegexNode::Kind::Coincide:
    n.lhs = compile(*e.lhs());
    n.rhs = compile(*e.rhs());
    n.lhs_nullable = nullable(*e.lhs());
    n.rhs_nullable = nullable(*e.rhs());
    break;
  case RegexNode::Kind::Duration:
    n.lo = e.lo();
    n.hi = e.hi();
    n.lhs = compile(*e.operand());
    break;
  case RegexNode::Kind::Star:
  case RegexNode::Kind::Plus:
    n.kind = RegexNode::Kind::Plus;
    n.lhs = compile(*e.operand());
    break;
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

OnlineMatcher::Output OnlineMatcher::step(int index, const Step &s,
                                          Time floor) {
  Node &n = nodes_[static_cast<std::size_t>(index)];
  using K = RegexNode::Kind;
  switch (n.kind) {
  case K::Atom: {
    const BoolNode &b = *n.boolean;
    if (!b.holds(s.cur)) {
      if (s.commit)
        n.run_start.reset();
      return {ZoneSet{}, s.t_cur};
    }
    Time a = (s.prev && b.holds(*s.prev) && n.run_start) ? *n.run_start
                                                          : s.t_prev;
    if (s.commit)
      n.run_start = a;
    bool falls = !s.next || !b.holds(*s.next);
    Output out{ZoneSet{}, a};
    if (!n.right_anchor || falls)
      out.zones = ZoneSet::from_zones(
          {atom_zone(a, s.t_cur, n.left_anchor, n.right_anchor)});
    return out;
  }
  case K::Choice: {
    Output l = step(n.lhs, s, floor);
    Output r = step(n.rhs, s, floor);
    return {unite(l.zones, r.zones), std::min(l.live_from, r.live_from)};
  }
  case K::Coincide: {
    Output l = step(n.lhs, s, floor);
    Output r = step(n.rhs, s, floor);
    return {ending_after(intersect_all(l.zones, r.zones), s.t_prev),
            std::max(l.live_from, r.live_from)};
  }
  case K::Duration: {
    // Anything beginning before t_prev - hi is too long for every later end.
    Output c = step(n.lhs, s, std::max(floor, s.t_prev - n.hi));
    return {ending_after(restrict_all(c.zones, n.lo, n.hi), s.t_prev),
            std::max(c.live_from, s.t_cur - n.hi)};
  }
  case K::Concat: {
    Output l = step(n.lhs, s, floor);
    Output r = step(n.rhs, s, floor);
    ZoneSet history = unite(n.history, l.zones);
    ZoneSet zones = ending_after(compose_all(history, r.zones), s.t_prev);
    if (n.lhs_nullable)
      zones = unite(zones, r.zones);
    if (n.rhs_nullable)
      zones = unite(zones, l.zones);
    zones.set_nullable(false);
    history = drop_begun_before(prune(history, r.live_from), floor);
    Time live = std::min(l.live_from, earliest_begin(history));
    if (n.lhs_nullable)
      live = std::min(live, r.live_from);
    if (s.commit)
      n.history = std::move(history);
    return {std::move(zones), live};
  }
  case K::Plus: {
    Output c = step(n.lhs, s, floor);
    std::size_t cap = fixpoint_cap_.value_or(
        2 * (static_cast<std::size_t>(s.t_cur) + segments_seen_) + 4);
    // Chains whose last link ends in this segment; earlier links come from
    // retained history or from this segment.
    ZoneSet acc = c.zones;
    ZoneSet delta = unite(n.history, c.zones);
    for (std::size_t round = 0; !delta.empty(); ++round) {
      if (round >= cap)
        throw InvariantViolation(
            "repetition fixpoint did not converge within " +
            std::to_string(cap) + " rounds");
      ZoneSet extended = ending_after(compose_all(delta, c.zones), s.t_prev);
      std::vector<Zone> fresh;
      for (const Zone &z : extended)
        if (!acc.covers(z) && !n.history.covers(z))
          fresh.push_back(z);
      delta = ZoneSet::from_zones(std::move(fresh));
      if (!delta.empty())
        acc = unite(acc, delta);
    }
    acc.set_nullable(false);
    ZoneSet history =
        drop_begun_before(prune(unite(n.history, acc), c.live_from), floor);
    Time live = std::min(c.live_from, earliest_begin(history));
    if (s.commit)
      n.history = std::move(history);
    return {std::move(acc), live};
  }
  default:
    break;
  }
  return {};
}

ZoneSet OnlineMatcher::run(const Step &s) {
  return step(root_, s, std::numeric_limits<Time>::min()).zones;
}

ZoneSet OnlineMatcher::emit(std::vector<Zone> zones) {
  ZoneSet fresh = ZoneSet::from_zones(std::move(zones));
  std::vector<Zone> out;
  for (const Zone &z : fresh)
    if (!recent_.covers(z))
      out.push_back(z);
  for (const Zone &z : out)
    recent_.insert(z);
  return ZoneSet::from_zones(std::move(out));
}

ZoneSet OnlineMatcher::feed(const Segment &segment) {
  if (flushed_)
    throw std::logic_error("feed after flush");
  if (segment.duration < 1)
    throw std::invalid_argument("segment duration must be positive");

  // Nothing emitted earlier can include a zone reaching past `committed_`
  // unless it reaches past it too.
  recent_ = ending_after(recent_, committed_);

  std::vector<Zone> found;
  if (held_) {
    Step s;
    s.t_prev = committed_;
    s.t_cur = committed_ + held_->duration;
    s.prev = last_committed_;
    s.cur = held_->props;
    s.next = segment.props;
    s.commit = true;
    ZoneSet z = run(s);
    found.insert(found.end(), z.begin(), z.end());
    committed_ = s.t_cur;
    last_committed_ = held_->props;
  }
  held_ = segment;
  frontier_ = committed_ + segment.duration;
  ++segments_seen_;

  // Matches that hold even if nothing falls at the new frontier.
  Step s;
  s.t_prev = committed_;
  s.t_cur = frontier_;
  s.prev = last_committed_;
  s.cur = segment.props;
  s.next = segment.props;
  s.commit = false;
  ZoneSet z = run(s);
  found.insert(found.end(), z.begin(), z.end());
  return emit(std::move(found));
}

ZoneSet OnlineMatcher::flush() {
  if (flushed_)
    throw std::logic_error("flush after flush");
  flushed_ = true;
  if (!held_)
    return {};
  recent_ = ending_after(recent_, committed_);
  Step s;
  s.t_prev = committed_;
  s.t_cur = frontier_;
  s.prev = last_committed_;
  s.cur = held_->props;
  s.next = std::nullopt;
  s.commit = true;
  ZoneSet z = run(s);
  committed_ = frontier_;
  last_committed_ = held_->props;
  held_.reset();
  return emit({z.begin(), z.end()});
}

std::size_t OnlineMatcher::state_size() const noexcept {
  std::size_t total = recent_.size();
  for (const Node &n : nodes_)
    total += n.history.size() + (n.run_start ? 1 : 0);
  return total;
}

} // namespace trematch
