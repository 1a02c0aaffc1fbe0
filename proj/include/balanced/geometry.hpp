#pragma once

#include "balanced/error.hpp"
#include "balanced/exact.hpp"

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <vector>

namespace balanced {

struct Vec2 {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {checked_sub(a.x, b.x), checked_sub(a.y, b.y)}; }

inline Wide cross(const Vec2& a, const Vec2& b) { return Wide(a.x) * b.y - Wide(a.y) * b.x; }
inline Wide dot(const Vec2& a, const Vec2& b) { return Wide(a.x) * b.x + Wide(a.y) * b.y; }

enum class Orientation { Left, Right, Collinear };

/// Sign of det(q - p, s - p): Left when s lies to the left of the ray p -> q.
inline Orientation orientation(const Vec2& p, const Vec2& q, const Vec2& s) {
  Wide det = cross(q - p, s - p);
  if (det > 0) return Orientation::Left;
  if (det < 0) return Orientation::Right;
  return Orientation::Collinear;
}

enum class Side { Left, On, Right };

inline Side opposite(Side s) {
  if (s == Side::Left) return Side::Right;
  if (s == Side::Right) return Side::Left;
  return Side::On;
}

/// A direction in the plane, identified up to positive scaling. Components
/// are kept in lowest terms so equal directions compare equal.
class Direction {
 public:
  Direction() : v_{0, 1} {}
  Direction(Coord dx, Coord dy) : v_{dx, dy} {
    if (dx == 0 && dy == 0) throw Error(ErrorCode::DegenerateDirection, "zero direction vector");
    Coord g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    v_.x /= g;
    v_.y /= g;
  }
  explicit Direction(const Vec2& v) : Direction(v.x, v.y) {}

  /// Angle zero: pointing up the vertical axis.
  static Direction vertical() { return Direction(0, 1); }

  Coord dx() const { return v_.x; }
  Coord dy() const { return v_.y; }
  const Vec2& vec() const { return v_; }

  Direction antipode() const { return Direction(-v_.x, -v_.y); }
  /// Quarter turn counterclockwise.
  Direction perp() const { return Direction(-v_.y, v_.x); }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  Vec2 v_;
};

inline std::ostream& operator<<(std::ostream& os, const Direction& d) {
  return os << "(" << d.dx() << "," << d.dy() << ")";
}

inline Wide cross(const Direction& a, const Direction& b) { return cross(a.vec(), b.vec()); }
inline Wide cross(const Direction& a, const Vec2& b) { return cross(a.vec(), b); }

/// Counterclockwise order of directions measured from a fixed origin, over
/// the half-open turn [origin, origin + 2pi). Sign computations only.
class CyclicOrder {
 public:
  explicit CyclicOrder(Direction origin = Direction::vertical()) : origin_(origin) {}

  const Direction& origin() const { return origin_; }

  /// 0 for angles in [0, pi) from the origin, 1 for [pi, 2pi).
  int half(const Direction& d) const {
    Wide c = cross(origin_, d);
    if (c > 0 || (c == 0 && dot(origin_.vec(), d.vec()) > 0)) return 0;
    return 1;
  }

  bool less(const Direction& a, const Direction& b) const {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
  }

  bool operator()(const Direction& a, const Direction& b) const { return less(a, b); }

  /// Strictly inside the open arc (a, b) walked counterclockwise, where a
  /// and b are positions in this order with a before b.
  bool strictly_between(const Direction& a, const Direction& t, const Direction& b) const {
    return less(a, t) && less(t, b);
  }

 private:
  Direction origin_;
};

/// A direction strictly inside the counterclockwise arc from a to b. When
/// a == b the arc is taken as the full turn.
inline Direction direction_between(const Direction& a, const Direction& b) {
  if (a == b) return a.antipode();
  Wide c = cross(a, b);
  if (c == 0) return a.perp();  // antipodal: the arc is exactly a half turn
  Coord sx = checked_add(a.dx(), b.dx());
  Coord sy = checked_add(a.dy(), b.dy());
  if (c > 0) return Direction(sx, sy);
  return Direction(-sx, -sy);
}

/// Sorted, de-duplicated directions in the counterclockwise order of `order`.
inline std::vector<Direction> sort_unique(std::vector<Direction> dirs, const CyclicOrder& order) {
  std::sort(dirs.begin(), dirs.end(), order);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

/// Rotates a list sorted from any origin so that it starts at the first
/// entry at or after `origin`.
inline std::vector<Direction> rotate_to(std::vector<Direction> sorted, const Direction& origin) {
  CyclicOrder order(origin);
  auto first = std::min_element(sorted.begin(), sorted.end(),
                                [&](const Direction& a, const Direction& b) { return order.less(a, b); });
  std::rotate(sorted.begin(), first, sorted.end());
  return sorted;
}

}  // namespace balanced
