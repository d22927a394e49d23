#include <algorithm>

#include "trematch/zone.hpp"

namespace trematch {

namespace {

bool key_less(const Zone &a, const Zone &b) noexcept { return zone_less(a, b); }

// Sorts, deduplicates and drops every zone included in another member.
std::vector<Zone> normalize(std::vector<Zone> zones) {
  std::sort(zones.begin(), zones.end(), key_less);
  zones.erase(std::unique(zones.begin(), zones.end()), zones.end());
  if (zones.size() < 2)
    return zones;

  // A zone y can include z only if y.b_lo <= z.b_lo and y.b_hi >= z.b_hi,
  // so with E the largest begin extent, y.b_lo lies in [z.b_hi - E, z.b_lo].
  bool bounded = true;
  Time extent = 0;
  for (const Zone &z : zones) {
    Limit lo = z.b_lo(), hi = z.b_hi();
    if (lo.infinite || hi.infinite) {
      bounded = false;
      break;
    }
    extent = std::max(extent, hi.value - lo.value);
  }

  std::vector<char> dropped(zones.size(), 0);
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const Zone &z = zones[i];
    std::size_t first = 0, last = zones.size();
    if (bounded) {
      Time from = z.b_hi().value - extent;
      Time to = z.b_lo().value;
      first = static_cast<std::size_t>(
          std::partition_point(zones.begin(), zones.end(),
                               [&](const Zone &y) { return y.b_lo().value < from; }) -
          zones.begin());
      last = static_cast<std::size_t>(
          std::partition_point(zones.begin() + static_cast<std::ptrdiff_t>(first),
                               zones.end(),
                               [&](const Zone &y) { return y.b_lo().value <= to; }) -
          zones.begin());
    }
    for (std::size_t j = first; j < last; ++j) {
      if (j != i && includes(zones[j], z)) {
        dropped[i] = 1;
        break;
      }
    }
  }
  std::vector<Zone> kept;
  kept.reserve(zones.size());
  for (std::size_t i = 0; i < zones.size(); ++i)
    if (!dropped[i])
      kept.push_back(zones[i]);
  return kept;
}

} // namespace

ZoneSet ZoneSet::from_zones(std::vector<Zone> zones, bool nullable) {
  std::vector<Zone> canonical;
  canonical.reserve(zones.size());
  for (const Zone &z : zones)
    if (auto t = tighten(z))
      canonical.push_back(*t);
  ZoneSet s;
  s.zones_ = normalize(std::move(canonical));
  s.nullable_ = nullable;
  s.refresh_extent();
  return s;
}

void ZoneSet::refresh_extent() noexcept {
  Time extent = 0;
  for (const Zone &z : zones_) {
    Limit lo = z.b_lo(), hi = z.b_hi();
    if (lo.infinite || hi.infinite) {
      max_begin_extent_.reset();
      return;
    }
    extent = std::max(extent, hi.value - lo.value);
  }
  max_begin_extent_ = extent;
}

bool ZoneSet::covers(const Zone &z) const noexcept {
  Limit lo = z.b_lo();
  Limit hi = z.b_hi();
  bool found = false;
  if (lo.infinite || hi.infinite) {
    for (const Zone &y : zones_)
      if (includes(y, z))
        return true;
    return false;
  }
  for_each_begin_overlap(hi.value, lo.value, [&](const Zone &y) {
    if (!found && includes(y, z))
      found = true;
  });
  return found;
}

bool ZoneSet::insert(const Zone &z) {
  if (covers(z))
    return false;
  std::erase_if(zones_, [&](const Zone &y) { return includes(z, y); });
  zones_.insert(std::upper_bound(zones_.begin(), zones_.end(), z, key_less), z);
  refresh_extent();
  return true;
}

bool ZoneSet::contains_point(Time t_num, Time tp_num, Time den) const noexcept {
  if (t_num == tp_num && nullable_)
    return true;
  for (const Zone &z : zones_)
    if (trematch::contains_point(z, t_num, tp_num, den))
      return true;
  return false;
}

ZoneSet unite(const ZoneSet &a, const ZoneSet &b) {
  std::vector<Zone> all;
  all.reserve(a.size() + b.size());
  all.insert(all.end(), a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return ZoneSet::from_zones(std::move(all), a.nullable() || b.nullable());
}

ZoneSet compose_all(const ZoneSet &a, const ZoneSet &b) {
  std::vector<Zone> out;
  for (const Zone &x : a) {
    // The split point lies in x's end range and in y's begin range.
    Limit lo = x.e_lo(), hi = x.e_hi();
    auto visit = [&](const Zone &y) {
      if (auto z = compose(x, y))
        out.push_back(*z);
    };
    if (lo.infinite || hi.infinite) {
      for (const Zone &y : b)
        visit(y);
    } else {
      b.for_each_begin_overlap(lo.value, hi.value, visit);
    }
  }
  return ZoneSet::from_zones(std::move(out));
}

ZoneSet intersect_all(const ZoneSet &a, const ZoneSet &b) {
  std::vector<Zone> out;
  for (const Zone &x : a) {
    Limit lo = x.b_lo(), hi = x.b_hi();
    auto visit = [&](const Zone &y) {
      if (auto z = intersect(x, y))
        out.push_back(*z);
    };
    if (lo.infinite || hi.infinite) {
      for (const Zone &y : b)
        visit(y);
    } else {
      b.for_each_begin_overlap(lo.value, hi.value, visit);
    }
  }
  return ZoneSet::from_zones(std::move(out));
}

ZoneSet restrict_all(const ZoneSet &a, Time m, Time n) {
  std::vector<Zone> out;
  out.reserve(a.size());
  for (const Zone &x : a)
    if (auto z = restrict_duration(x, m, n))
      out.push_back(*z);
  return ZoneSet::from_zones(std::move(out));
}

} // namespace trematch
