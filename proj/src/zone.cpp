#include "trematch/zone.hpp"

#include <algorithm>
#include <stdexcept>

namespace trematch {

namespace {

constexpr Time kMinKey = std::numeric_limits<Time>::min();
constexpr Time kMaxKey = std::numeric_limits<Time>::max();

Bound upper_bound_of(Limit l) noexcept {
  if (l.infinite)
    return Bound::infinity();
  return l.strict ? Bound::lt(l.value) : Bound::le(l.value);
}

// `v <= x` is the difference bound `0 - x <= -v`.
Bound lower_bound_of(Limit l) noexcept {
  if (l.infinite)
    return Bound::infinity();
  return l.strict ? Bound::lt(-l.value) : Bound::le(-l.value);
}

template <std::size_t N> bool close(std::array<Bound, N * N> &m) noexcept {
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < N; ++i) {
      Bound ik = m[i * N + k];
      if (ik.is_infinite())
        continue;
      for (std::size_t j = 0; j < N; ++j) {
        Bound via = ik + m[k * N + j];
        if (via < m[i * N + j])
          m[i * N + j] = via;
      }
    }
  for (std::size_t i = 0; i < N; ++i) {
    if (m[i * N + i] < Bound::le(0))
      return false;
    m[i * N + i] = Bound::le(0);
  }
  return true;
}

} // namespace

Zone::Zone() noexcept {
  m_.fill(Bound::infinity());
  for (int i = 0; i < 3; ++i)
    m_[i * 3 + i] = Bound::le(0);
}

Zone::Zone(Limit b_lo, Limit b_hi, Limit e_lo, Limit e_hi, Limit d_lo,
           Limit d_hi) noexcept
    : Zone() {
  set(0, 1, lower_bound_of(b_lo));
  set(1, 0, upper_bound_of(b_hi));
  set(0, 2, lower_bound_of(e_lo));
  set(2, 0, upper_bound_of(e_hi));
  set(1, 2, lower_bound_of(d_lo));
  set(2, 1, upper_bound_of(d_hi));
}

Limit Zone::lower(int i, int j) const noexcept {
  Bound b = at(i, j);
  if (b.is_infinite())
    return Limit::none();
  return {-b.value(), b.strict(), false};
}

Limit Zone::upper(int i, int j) const noexcept {
  Bound b = at(i, j);
  if (b.is_infinite())
    return Limit::none();
  return {b.value(), b.strict(), false};
}

std::array<Time, 12> Zone::key() const noexcept {
  std::array<Time, 12> k{};
  const Limit limits[6] = {b_lo(), b_hi(), e_lo(), e_hi(), d_lo(), d_hi()};
  for (int i = 0; i < 6; ++i) {
    bool is_lower = i % 2 == 0;
    k[2 * i] = limits[i].infinite ? (is_lower ? kMinKey : kMaxKey)
                                  : limits[i].value;
    k[2 * i + 1] = limits[i].strict ? 1 : 0;
  }
  return k;
}

bool zone_less(const Zone &a, const Zone &b) noexcept {
  return a.key() < b.key();
}

Zone make_triangle(Time a, Time b) {
  if (a >= b)
    throw std::invalid_argument("triangle requires a < b");
  return Zone(Limit::closed(a), Limit::open(b), Limit::open(a),
              Limit::closed(b), Limit::open(0), Limit::closed(b - a));
}

std::optional<Zone> tighten(const Zone &z) noexcept {
  std::array<Bound, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i * 3 + j] = z.at(i, j);
  if (!close<3>(m))
    return std::nullopt;
  Zone out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.set(i, j, m[i * 3 + j]);
  return out;
}

std::optional<Zone> intersect(const Zone &z1, const Zone &z2) noexcept {
  Zone out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.set(i, j, std::min(z1.at(i, j), z2.at(i, j)));
  return tighten(out);
}

std::optional<Zone> compose(const Zone &z1, const Zone &z2) noexcept {
  // Nodes: 0 = origin, 1 = t, 2 = s, 3 = t'.
  std::array<Bound, 16> m;
  m.fill(Bound::infinity());
  for (int i = 0; i < 4; ++i)
    m[i * 4 + i] = Bound::le(0);
  constexpr int first[3] = {0, 1, 2};
  constexpr int second[3] = {0, 2, 3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        continue;
      Bound &a = m[first[i] * 4 + first[j]];
      a = std::min(a, z1.at(i, j));
      Bound &b = m[second[i] * 4 + second[j]];
      b = std::min(b, z2.at(i, j));
    }
  if (!close<4>(m))
    return std::nullopt;
  constexpr int keep[3] = {0, 1, 3};
  Zone out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.set(i, j, m[keep[i] * 4 + keep[j]]);
  return out;
}

std::optional<Zone> restrict_duration(const Zone &z, Time m, Time n) noexcept {
  Zone out = z;
  out.set(1, 2, std::min(z.at(1, 2), Bound::le(-m)));
  out.set(2, 1, std::min(z.at(2, 1), Bound::le(n)));
  return tighten(out);
}

bool includes(const Zone &z1, const Zone &z2) noexcept {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (z1.at(i, j) < z2.at(i, j))
        return false;
  return true;
}

bool contains_point(const Zone &z, Time t_num, Time tp_num, Time den) noexcept {
  const Time x[3] = {0, t_num, tp_num};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        continue;
      Bound b = z.at(i, j);
      if (b.is_infinite())
        continue;
      Time diff = x[i] - x[j];
      Time limit = b.value() * den;
      if (b.strict() ? !(diff < limit) : !(diff <= limit))
        return false;
    }
  return true;
}

} // namespace trematch
