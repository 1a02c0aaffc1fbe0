#pragma once

#include "balanced/instance.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <set>

namespace balanced {

namespace detail {

// Unbiased draw in [lo, hi] without std::uniform_int_distribution, whose
// output differs between standard libraries.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

inline void require_color_counts(int r, int b) {
  if (r < 0 || b < r || (b - r) % 2 != 0 || r + b == 0)
    throw Error(ErrorCode::ColorImbalance,
                "need b >= r >= 0, b - r even and at least one point; got r=" + std::to_string(r) +
                    " b=" + std::to_string(b));
}

}  // namespace detail

namespace detail {

// Rejection-samples integer points until the set is in general position
// with distinct abscissae; point i is drawn from [-bounds[i], bounds[i]]^2.
inline std::vector<Vec2> sample_general_position(std::uint64_t seed, const std::vector<std::int64_t>& bounds) {
  std::mt19937_64 rng(seed);
  std::vector<Vec2> pts;
  std::set<Coord> used_x;
  constexpr int kAttemptsPerPoint = 20000;
  while (pts.size() < bounds.size()) {
    const std::int64_t bound = bounds[pts.size()];
    bool placed = false;
    for (int attempt = 0; attempt < kAttemptsPerPoint && !placed; ++attempt) {
      Vec2 c{draw(rng, -bound, bound), draw(rng, -bound, bound)};
      if (used_x.count(c.x)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < pts.size() && ok; ++i)
        for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
          if (orientation(pts[i], pts[j], c) == Orientation::Collinear) ok = false;
      if (!ok) continue;
      pts.push_back(c);
      used_x.insert(c.x);
      placed = true;
    }
    if (!placed) throw Error(ErrorCode::BoundTooSmall, "could not place point " + std::to_string(pts.size()));
  }
  return pts;
}

inline Instance label(const std::vector<Vec2>& pts, int r) {
  std::vector<LabeledPoint> labeled;
  labeled.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    labeled.push_back({Rational(pts[i].x), Rational(pts[i].y), i < static_cast<std::size_t>(r) ? Color::Red : Color::Blue, i});
  return validate(std::move(labeled));
}

inline void check_bound(std::int64_t bound, std::int64_t points) {
  if (bound <= 0 || bound * bound < points) throw Error(ErrorCode::BoundTooSmall, "bound^2 must be at least the point count");
  if (bound > kCoordLimit) throw Error(ErrorCode::CoordinateRange, "bound exceeds 2^40");
}

}  // namespace detail

/// Rejection-samples integer points in [-bound, bound]^2 until the set is in
/// general position with distinct abscissae. Points 0..r-1 are red, the
/// rest blue. Deterministic for a fixed seed.
inline Instance gen_random(std::uint64_t seed, int r, int b, std::int64_t bound) {
  detail::require_color_counts(r, b);
  detail::check_bound(bound, r + b);
  return detail::label(detail::sample_general_position(seed, std::vector<std::int64_t>(r + b, bound)), r);
}

/// Like gen_random, but the points of color `core` are drawn from the
/// smaller box [-inner, inner]^2. Such sets usually admit rotations that
/// never cross delta, which random sets rarely do.
inline Instance gen_clustered(std::uint64_t seed, int r, int b, std::int64_t bound, std::int64_t inner,
                              Color core = Color::Blue) {
  detail::require_color_counts(r, b);
  detail::check_bound(bound, r + b);
  detail::check_bound(inner, core == Color::Red ? r : b);
  if (inner > bound) throw Error(ErrorCode::InvalidArgument, "inner box exceeds the outer bound");
  std::vector<std::int64_t> bounds;
  for (int i = 0; i < r + b; ++i) bounds.push_back((i < r) == (core == Color::Red) ? inner : bound);
  return detail::label(detail::sample_general_position(seed, bounds), r);
}

/// r + b points on the parabola y = x^2 (convex position, no three
/// collinear), reds on the left arc and blues on the right arc, so a
/// vertical line separates the colors.
inline Instance gen_separated_convex(int r, int b) {
  detail::require_color_counts(r, b);
  const int n = r + b;
  std::vector<LabeledPoint> labeled;
  labeled.reserve(n);
  for (int i = 0; i < n; ++i) {
    Coord x = 2 * i - (n - 1);
    labeled.push_back({Rational(x), Rational(x * x), i < r ? Color::Red : Color::Blue, static_cast<PointId>(i)});
  }
  return validate(std::move(labeled));
}

enum class SampleKind { Random, Clustered };

/// Instance for batch experiments, a pure function of the seed: delta in
/// {0,1,2,3}, at most `max_points` points, r >= 1 when delta = 0.
/// Clustered samples pack the blues for odd seeds and the reds otherwise.
inline Instance sample_instance(std::uint64_t seed, SampleKind kind, int max_points = 30) {
  if (max_points < 2) throw Error(ErrorCode::InvalidArgument, "need room for at least two points");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int delta = static_cast<int>(detail::draw(rng, 0, std::min(3, max_points / 2 - 1)));
  const int r = static_cast<int>(detail::draw(rng, delta == 0 ? 1 : 0, (max_points - 2 * delta) / 2));
  const int b = r + 2 * delta;
  if (kind == SampleKind::Random) return gen_random(seed, r, b, 200);
  return gen_clustered(seed, r, b, 200, 40, seed % 2 == 1 ? Color::Blue : Color::Red);
}

}  // namespace balanced
