#include "trematch/offline.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "trematch/error.hpp"

namespace trematch {

std::size_t default_fixpoint_cap(const TimedBehavior &b) noexcept {
  return 2 * (static_cast<std::size_t>(b.horizon()) + b.size()) + 4;
}

namespace {

Zone atom_zone(Time a, Time c, bool left_anchor, bool right_anchor) {
  Zone z(Limit::closed(a), left_anchor ? Limit::closed(a) : Limit::open(c),
         right_anchor ? Limit::closed(c) : Limit::open(a), Limit::closed(c),
         Limit::open(0), Limit::closed(c - a));
  return *tighten(z);
}

bool contains_zone(const ZoneSet &s, const Zone &z) {
  return std::binary_search(s.begin(), s.end(), z, zone_less);
}

class Evaluator {
public:
  Evaluator(const TimedBehavior &b, std::size_t cap) : b_(b), cap_(cap) {}

  ZoneSet eval(const RegexNode &e) {
    std::string key = to_string(e);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    ZoneSet result = compute(e);
    memo_.emplace(std::move(key), result);
    return result;
  }

private:
  const TimedBehavior &b_;
  std::size_t cap_;
  std::unordered_map<std::string, ZoneSet> memo_;

  ZoneSet compute(const RegexNode &e) {
    using K = RegexNode::Kind;
    switch (e.kind()) {
    case K::Atom:
      return match_atom(b_, *e.boolean(), e.left_anchor(), e.right_anchor());
    case K::Choice:
      return unite(eval(*e.lhs()), eval(*e.rhs()));
    case K::Coincide: {
      ZoneSet l = eval(*e.lhs()), r = eval(*e.rhs());
      ZoneSet out = intersect_all(l, r);
      out.set_nullable(l.nullable() && r.nullable());
      return out;
    }
    case K::Concat: {
      ZoneSet l = eval(*e.lhs()), r = eval(*e.rhs());
      ZoneSet out = compose_all(l, r);
      if (l.nullable())
        out = unite(out, r);
      if (r.nullable())
        out = unite(out, l);
      out.set_nullable(l.nullable() && r.nullable());
      return out;
    }
    case K::Duration: {
      ZoneSet inner = eval(*e.operand());
      ZoneSet out = restrict_all(inner, e.lo(), e.hi());
      out.set_nullable(inner.nullable() && e.lo() == 0);
      return out;
    }
    case K::Star:
    case K::Plus: {
      ZoneSet out = plus_fixpoint(eval(*e.operand()), cap_);
      if (e.kind() == K::Star || e.accepts_empty())
        out.set_nullable(true);
      return out;
    }
    }
    return {};
  }
};

} // namespace

ZoneSet match_atom(const TimedBehavior &b, const BoolNode &e, bool left_anchor,
                   bool right_anchor) {
  std::vector<Zone> zones;
  for (const Interval &iv : eval_boolean(b, e))
    zones.push_back(atom_zone(iv.lo, iv.hi, left_anchor, right_anchor));
  return ZoneSet::from_zones(std::move(zones));
}

ZoneSet plus_fixpoint(const ZoneSet &m, std::size_t cap) {
  ZoneSet x = m;
  ZoneSet delta = m;
  for (std::size_t round = 0; !delta.empty(); ++round) {
    if (round >= cap)
      throw InvariantViolation("repetition fixpoint did not converge within " +
                               std::to_string(cap) + " rounds");
    ZoneSet merged = unite(x, compose_all(m, delta));
    std::vector<Zone> fresh;
    for (const Zone &z : merged)
      if (!contains_zone(x, z))
        fresh.push_back(z);
    delta = ZoneSet::from_zones(std::move(fresh));
    x = std::move(merged);
  }
  x.set_nullable(m.nullable());
  return x;
}

ZoneSet match_expr(const TimedBehavior &b, const Regex &e,
                   const OfflineOptions &options) {
  Evaluator ev(b, options.fixpoint_cap.value_or(default_fixpoint_cap(b)));
  return ev.eval(*e);
}

} // namespace trematch
