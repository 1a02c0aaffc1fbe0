#pragma once

// Test corpora and brute-force oracles shared by the unit tests and the
// acceptance binary. The oracles avoid the library's event walks and only
// use evaluation at single directions.

#include "balanced/generators.hpp"
#include "balanced/sliding.hpp"

#include <functional>
#include <random>

namespace balanced::testing {

/// Uniform random instance with 2 <= r + b <= 30 and delta in {0,1,2,3}.
inline Instance random_small(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 1);
  int delta = static_cast<int>(detail::draw(rng, 0, 3));
  int max_r = (30 - 2 * delta) / 2;
  int r = static_cast<int>(detail::draw(rng, delta == 0 ? 1 : 0, max_r));
  return gen_random(seed, r, r + 2 * delta, 200);
}

/// Instance with one color packed in the middle, r + b <= 28. Odd seeds
/// pack the blues, even seeds the reds.
inline Instance clustered_small(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 31 + 7);
  int delta = static_cast<int>(detail::draw(rng, 0, 3));
  int r = static_cast<int>(detail::draw(rng, 1, (28 - 2 * delta) / 2));
  Color core = seed % 2 == 1 ? Color::Blue : Color::Red;
  return gen_clustered(seed, r, r + 2 * delta, 200, 40, core);
}

/// Every direction through two instance points plus `extra` and the
/// antipodes of `extra`, in counterclockwise order from `origin`, with one
/// direction inside each gap.
struct BruteGrid {
  std::vector<Direction> critical;
  std::vector<Direction> inside;
};

inline BruteGrid brute_grid(const Instance& inst, const Direction& origin, const std::vector<Direction>& extra) {
  std::vector<Direction> dirs;
  for (PointId i = 0; i < inst.size(); ++i)
    for (PointId j = 0; j < inst.size(); ++j)
      if (i != j) dirs.emplace_back(inst.pos(j) - inst.pos(i));
  for (const auto& d : extra) {
    dirs.push_back(d);
    dirs.push_back(d.antipode());
  }
  CyclicOrder order(origin);
  std::sort(dirs.begin(), dirs.end(), order);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  BruteGrid g{dirs, {}};
  for (std::size_t i = 0; i < dirs.size(); ++i) g.inside.push_back(direction_between(dirs[i], dirs[(i + 1) % dirs.size()]));
  return g;
}

using LineAt = std::function<DirectedLine(const Direction&)>;

/// Minimum over every gap direction of the number of `members` strictly
/// left of both the line at t and the line at t + pi.
inline int brute_waist(const Instance& inst, const std::vector<PointId>& members, const BruteGrid& grid,
                       const LineAt& line_at) {
  int best = std::numeric_limits<int>::max();
  for (const auto& t : grid.inside) {
    DirectedLine a = line_at(t), b = line_at(t.antipode());
    int count = 0;
    for (PointId s : members) count += a.side(inst.pos(s)) == Side::Left && b.side(inst.pos(s)) == Side::Left;
    best = std::min(best, count);
  }
  return best;
}

inline int brute_waist(const SlidingRotation& sr, const Instance& inst) {
  auto grid = brute_grid(inst, sr.start(), breakpoints(sr));
  return brute_waist(inst, inst.ids_of(sr.color()), grid,
                     [&](const Direction& t) { return evaluate_at(sr, inst, t); });
}

/// Line of a plain rotation at a direction inside one of its arcs, read
/// from the trace's profile.
inline LineAt plain_line(const RotationTrace& trace, const Instance& inst) {
  return [&trace, &inst](const Direction& t) { return DirectedLine::through(inst, trace.interval_at(t).pivot, t); };
}

/// Weights of the parallel lines strictly between two parallel lines at
/// direction d, one per gap between the points passed.
inline std::vector<int> brute_slide_weights(const Instance& inst, const Direction& d, PointId a, PointId b) {
  auto la = DirectedLine::through(inst, a, d);
  auto lb = DirectedLine::through(inst, b, d);
  // Points strictly between the two lines, ordered from right to left.
  std::vector<PointId> between;
  for (PointId s = 0; s < inst.size(); ++s) {
    Side sa = la.side(inst.pos(s)), sb = lb.side(inst.pos(s));
    if (sa != Side::On && sb != Side::On && sa != sb) between.push_back(s);
  }
  auto rightmost = la.side(inst.pos(b)) == Side::Right ? lb : la;
  std::sort(between.begin(), between.end(), [&](PointId x, PointId y) {
    return DirectedLine::through(inst, x, d).side(inst.pos(y)) == Side::Left;
  });
  std::vector<int> out;
  int w = halfplane_weight(rightmost, inst, Side::Right) + inst.weight(rightmost.anchor());
  out.push_back(w);
  for (PointId s : between) {
    w += inst.weight(s);
    out.push_back(w);
  }
  return out;
}

/// Closed central region test against the two antipodal lines of gamma.
inline bool brute_central(const SlidingRotation& gamma, const Instance& inst, const DirectedLine& line) {
  DirectedLine a = evaluate_at(gamma, inst, line.direction());
  DirectedLine b = evaluate_at(gamma, inst, line.direction().antipode());
  for (const auto& boundary : {a, b})
    if (boundary.side(line.origin()) == Side::Right) return false;
  return true;
}

}  // namespace balanced::testing
