#pragma once

#include "balanced/instance.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace balanced {

/// A balanced line, keyed by its red and blue spanning points.
struct BalancedLine {
  PointId red = 0;
  PointId blue = 0;
  /// Open halfplane weights (right, left) of the line directed red -> blue;
  /// both equal delta.
  int right_weight = 0;
  int left_weight = 0;

  friend bool operator==(const BalancedLine& a, const BalancedLine& b) { return a.red == b.red && a.blue == b.blue; }
  friend bool operator<(const BalancedLine& a, const BalancedLine& b) {
    return a.red != b.red ? a.red < b.red : a.blue < b.blue;
  }
};

using BalancedSet = std::set<BalancedLine>;

/// Builds the record for a red/blue pair known to be balanced.
inline BalancedLine make_balanced_line(const Instance& inst, PointId a, PointId b) {
  PointId red = inst.color(a) == Color::Red ? a : b;
  PointId blue = red == a ? b : a;
  return {red, blue, inst.delta(), inst.delta()};
}

/// Checks every bichromatic pair against every other point. O(n^3).
inline BalancedSet enumerate_naive(const Instance& inst) {
  BalancedSet out;
  const int delta = inst.delta();
  for (PointId red : inst.ids_of(Color::Red)) {
    for (PointId blue : inst.ids_of(Color::Blue)) {
      const Vec2& p = inst.pos(red);
      const Vec2& q = inst.pos(blue);
      int right = 0, left = 0;
      for (PointId s = 0; s < inst.size(); ++s) {
        if (s == red || s == blue) continue;
        switch (orientation(p, q, inst.pos(s))) {
          case Orientation::Left: left += inst.weight(s); break;
          case Orientation::Right: right += inst.weight(s); break;
          case Orientation::Collinear: break;
        }
      }
      if (right == delta && left == delta) out.insert({red, blue, right, left});
    }
  }
  return out;
}

/// Rotates a line about each red anchor, with the other points sorted by
/// angle, and keeps the right-halfplane weight up to date. O(n^2 log n).
inline BalancedSet enumerate_sweep(const Instance& inst) {
  BalancedSet out;
  const int delta = inst.delta();
  const int total = inst.b() - inst.r();
  const CyclicOrder order(Direction::vertical());

  struct Crossing {
    Direction at;
    PointId point;
    bool head;
  };

  for (PointId anchor : inst.ids_of(Color::Red)) {
    const Vec2& p = inst.pos(anchor);
    std::vector<Crossing> events;
    events.reserve(2 * inst.size());
    // Starting upwards, the vertical line through p meets no other point.
    int right = 0;
    const DirectedLine start = DirectedLine::through(inst, anchor, Direction::vertical());
    for (PointId s = 0; s < inst.size(); ++s) {
      if (s == anchor) continue;
      Direction d(inst.pos(s) - p);
      events.push_back({d, s, true});
      events.push_back({d.antipode(), s, false});
      if (start.side(inst.pos(s)) == Side::Right) right += inst.weight(s);
    }
    std::sort(events.begin(), events.end(), [&](const Crossing& a, const Crossing& b) { return order.less(a.at, b.at); });

    for (const auto& e : events) {
      if (e.head) {
        // Directed line anchor -> e.point; e.point is on it, not yet right.
        if (inst.color(e.point) == Color::Blue) {
          int left = total - right - inst.weight(anchor) - inst.weight(e.point);
          if (right == delta && left == delta) out.insert({anchor, e.point, right, left});
        }
        right += inst.weight(e.point);
      } else {
        right -= inst.weight(e.point);
      }
    }
  }
  return out;
}

/// Number of balanced lines. At least r for every valid instance.
inline std::size_t count_balanced(const Instance& inst) {
  std::size_t n = enumerate_sweep(inst).size();
  assert(n >= static_cast<std::size_t>(std::max(inst.r(), 0)));
  return n;
}

/// `# delta=<d>` header then one `redId,blueId` row per line.
inline std::string balanced_csv(const Instance& inst, const BalancedSet& lines) {
  std::ostringstream os;
  os << "# delta=" << inst.delta() << "\n" << "red,blue\n";
  for (const auto& l : lines) os << l.red << "," << l.blue << "\n";
  return os.str();
}

}  // namespace balanced
