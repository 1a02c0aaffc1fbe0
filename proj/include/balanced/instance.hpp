#pragma once

#include "balanced/error.hpp"
#include "balanced/exact.hpp"
#include "balanced/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace balanced {

enum class Color { Red, Blue };

/// +1 for blue, -1 for red.
inline int weight(Color c) { return c == Color::Blue ? 1 : -1; }
inline Color other(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }
inline char color_letter(Color c) { return c == Color::Red ? 'R' : 'B'; }

struct LabeledPoint {
  Rational x;
  Rational y;
  Color color = Color::Red;
  PointId id = 0;
};

class Instance;
Instance validate(std::vector<LabeledPoint> points);

/// Immutable bichromatic point set in general position with distinct
/// abscissae. Predicates run on an integer lattice obtained by scaling all
/// coordinates by the least common denominator, which preserves every
/// orientation sign.
class Instance {
 public:
  std::size_t size() const { return points_.size(); }
  const std::vector<LabeledPoint>& points() const { return points_; }
  const LabeledPoint& point(PointId id) const { return points_.at(id); }
  const Vec2& pos(PointId id) const { return lattice_[id]; }
  Color color(PointId id) const { return points_[id].color; }
  int weight(PointId id) const { return balanced::weight(points_[id].color); }

  int r() const { return r_; }
  int b() const { return b_; }
  /// (b - r) / 2. Non-negative for validated instances; negative only on
  /// the polarity-reversed view produced by `with_swapped_colors`.
  int delta() const { return delta_; }

  std::vector<PointId> ids_of(Color c) const {
    std::vector<PointId> out;
    for (const auto& p : points_)
      if (p.color == c) out.push_back(p.id);
    return out;
  }

  /// Same points with the two colors exchanged. The result may have
  /// negative delta; it is the internal view used when the blue class
  /// plays the role of the red class.
  Instance with_swapped_colors() const {
    Instance out = *this;
    for (auto& p : out.points_) p.color = balanced::other(p.color);
    std::swap(out.r_, out.b_);
    out.delta_ = -delta_;
    return out;
  }

 private:
  friend Instance validate(std::vector<LabeledPoint> points);
  Instance() = default;

  std::vector<LabeledPoint> points_;
  std::vector<Vec2> lattice_;
  int r_ = 0;
  int b_ = 0;
  int delta_ = 0;
};

/// Validates the general-position, distinct-abscissa and color-balance
/// invariants. Ids are reassigned to list positions.
inline Instance validate(std::vector<LabeledPoint> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInstance, "instance has no points");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) points[i].id = i;

  BigInt lcm = 1;
  for (const auto& p : points) {
    lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(p.x)));
    lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(p.y)));
  }
  std::vector<Vec2> lattice(n);
  auto to_lattice = [&](const Rational& q, PointId id) {
    BigInt v = boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q));
    if (v > kCoordLimit || v < -kCoordLimit)
      throw Error(ErrorCode::CoordinateRange, "scaled coordinate exceeds 2^40", {id});
    return static_cast<Coord>(v);
  };
  for (std::size_t i = 0; i < n; ++i) lattice[i] = {to_lattice(points[i].x, i), to_lattice(points[i].y, i)};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (orientation(lattice[i], lattice[j], lattice[k]) == Orientation::Collinear)
          throw Error(ErrorCode::CollinearTriple,
                      "points " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                          " are collinear",
                      {i, j, k});

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (lattice[i].x == lattice[j].x)
        throw Error(ErrorCode::DuplicateAbscissa,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " share an abscissa", {i, j});

  int r = 0, b = 0;
  for (const auto& p : points) (p.color == Color::Red ? r : b)++;
  if (b < r || (b - r) % 2 != 0) {
    std::vector<PointId> reds;
    for (const auto& p : points)
      if (p.color == Color::Red) reds.push_back(p.id);
    throw Error(ErrorCode::ColorImbalance,
                "need b >= r and b - r even, got r=" + std::to_string(r) + " b=" + std::to_string(b), reds);
  }

  Instance inst;
  inst.points_ = std::move(points);
  inst.lattice_ = std::move(lattice);
  inst.r_ = r;
  inst.b_ = b;
  inst.delta_ = (b - r) / 2;
  return inst;
}

/// Exchanges red and blue on a raw point list, before validation.
inline std::vector<LabeledPoint> swap_colors(std::vector<LabeledPoint> points) {
  for (auto& p : points) p.color = other(p.color);
  return points;
}

/// Directed line through an instance point. Either spanned by two instance
/// points (direction from the anchor towards the second one) or given by a
/// pivot and an exact direction.
class DirectedLine {
 public:
  static DirectedLine spanned_by(const Instance& inst, PointId a, PointId b) {
    if (a == b) throw Error(ErrorCode::DegenerateDirection, "a line needs two distinct points", {a});
    DirectedLine l(inst, a, Direction(inst.pos(b) - inst.pos(a)));
    l.second_ = b;
    return l;
  }

  /// Line through `pivot` with direction `dir`. `second` records another
  /// instance point known to lie on it.
  static DirectedLine through(const Instance& inst, PointId pivot, Direction dir,
                              std::optional<PointId> second = std::nullopt) {
    DirectedLine l(inst, pivot, dir);
    l.second_ = second;
    return l;
  }

  PointId anchor() const { return anchor_; }
  const Vec2& origin() const { return origin_; }
  const Direction& direction() const { return dir_; }
  std::optional<PointId> second() const { return second_; }
  bool is_spanned() const { return second_.has_value(); }

  Side side(const Vec2& p) const {
    Wide c = cross(dir_, p - origin_);
    if (c > 0) return Side::Left;
    if (c < 0) return Side::Right;
    return Side::On;
  }

  DirectedLine reversed() const {
    DirectedLine l = *this;
    l.dir_ = dir_.antipode();
    return l;
  }

  /// Same oriented line, regardless of which point anchors it.
  bool same_as(const DirectedLine& o) const { return dir_ == o.dir_ && side(o.origin_) == Side::On; }
  /// Same undirected line.
  bool same_undirected(const DirectedLine& o) const {
    return (dir_ == o.dir_ || dir_ == o.dir_.antipode()) && side(o.origin_) == Side::On;
  }

 private:
  DirectedLine(const Instance& inst, PointId anchor, Direction dir)
      : anchor_(anchor), origin_(inst.pos(anchor)), dir_(dir) {}

  PointId anchor_;
  Vec2 origin_;
  Direction dir_;
  std::optional<PointId> second_;
};

/// Weight of the open halfplane on `side` of the line. Points on the line
/// count for neither side.
inline int halfplane_weight(const DirectedLine& line, const Instance& inst, Side side) {
  if (side == Side::On) throw Error(ErrorCode::InvalidArgument, "halfplane side must be Left or Right");
  int w = 0;
  for (PointId i = 0; i < inst.size(); ++i)
    if (line.side(inst.pos(i)) == side) w += inst.weight(i);
  return w;
}

/// True when the line through the two points leaves weight delta in both
/// open halfplanes. Argument order does not matter; colors must differ.
inline bool is_balanced(PointId a, PointId b, const Instance& inst) {
  if (inst.color(a) == inst.color(b))
    throw Error(ErrorCode::SameColorPair, "balanced lines join a red and a blue point", {a, b});
  auto line = DirectedLine::spanned_by(inst, a, b);
  return halfplane_weight(line, inst, Side::Right) == inst.delta() &&
         halfplane_weight(line, inst, Side::Left) == inst.delta();
}

}  // namespace balanced
