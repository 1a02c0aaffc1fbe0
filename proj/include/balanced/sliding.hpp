#pragma once

#include "balanced/oracle.hpp"
#include "balanced/rotation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace balanced {

/// A critical direction of a sliding rotation. The line passes, at this
/// fixed direction, through the points of `path` in order: consecutive
/// entries on the same line are a pivot change, otherwise a parallel slide.
struct Stop {
  Direction at;
  std::vector<PointId> path;
};

struct RotateArc {
  PointId pivot;
  Direction from;
  Direction to;
};

struct Slide {
  Direction direction;
  PointId from;
  PointId to;
};

using Piece = std::variant<RotateArc, Slide>;

/// Closed, angularly monotone curve in line space made of rotations about
/// points of one color class and parallel slides between lines through
/// such points. Stops lie strictly inside (start, start + 2pi) in
/// counterclockwise order; the arc before stop i turns about
/// `stops[i].path.front()`, the arc after it about `stops[i].path.back()`.
class SlidingRotation {
 public:
  SlidingRotation(Color color, Direction start, PointId initial_pivot, std::vector<Stop> stops)
      : color_(color), start_(start), initial_pivot_(initial_pivot), stops_(std::move(stops)) {
    CyclicOrder order(start_);
    PointId pivot = initial_pivot_;
    for (std::size_t i = 0; i < stops_.size(); ++i) {
      const Stop& s = stops_[i];
      if (s.path.empty() || s.path.front() != pivot)
        throw Error(ErrorCode::InvalidArgument, "sliding rotation is not continuous at a stop");
      if (s.at == start_ || (i > 0 && !order.less(stops_[i - 1].at, s.at)))
        throw Error(ErrorCode::InvalidArgument, "sliding rotation stops must strictly increase");
      pivot = s.path.back();
    }
    if (pivot != initial_pivot_) throw Error(ErrorCode::InvalidArgument, "sliding rotation does not close");
  }

  Color color() const { return color_; }
  const Direction& start() const { return start_; }
  PointId initial_pivot() const { return initial_pivot_; }
  const std::vector<Stop>& stops() const { return stops_; }

  /// How the rotation was obtained, for reports ("R^2", "splice", "shift").
  std::string origin;
  /// Level of the plain rotation it was lifted from, -1 otherwise.
  int level = -1;

  SlidingRotation recolored(Color c) const {
    SlidingRotation out = *this;
    out.color_ = c;
    return out;
  }

  /// Index of the first stop at or after t.
  std::size_t stop_index(const Direction& t) const {
    CyclicOrder order(start_);
    auto it = std::lower_bound(stops_.begin(), stops_.end(), t,
                               [&](const Stop& s, const Direction& d) { return order.less(s.at, d); });
    return static_cast<std::size_t>(it - stops_.begin());
  }

  const Stop* stop_at(const Direction& t) const {
    std::size_t i = stop_index(t);
    return i < stops_.size() && stops_[i].at == t ? &stops_[i] : nullptr;
  }

  /// Pivot on the arc arriving at direction t.
  PointId pivot_before(const Direction& t) const {
    std::size_t i = stop_index(t);
    return i < stops_.size() ? stops_[i].path.front() : initial_pivot_;
  }

  /// Pivot on the arc leaving direction t.
  PointId pivot_after(const Direction& t) const {
    if (const Stop* s = stop_at(t)) return s->path.back();
    return pivot_before(t);
  }

  std::vector<PointId> pivots() const {
    std::set<PointId> out{initial_pivot_};
    for (const auto& s : stops_) out.insert(s.path.begin(), s.path.end());
    return {out.begin(), out.end()};
  }

  /// The curve as rotation arcs and slides, in order.
  std::vector<Piece> pieces(const Instance& inst) const {
    std::vector<Piece> out;
    Direction from = start_;
    PointId pivot = initial_pivot_;
    for (const auto& s : stops_) {
      out.push_back(RotateArc{pivot, from, s.at});
      for (std::size_t k = 0; k + 1 < s.path.size(); ++k) {
        auto a = DirectedLine::through(inst, s.path[k], s.at);
        if (a.side(inst.pos(s.path[k + 1])) != Side::On) out.push_back(Slide{s.at, s.path[k], s.path[k + 1]});
      }
      from = s.at;
      pivot = s.path.back();
    }
    out.push_back(RotateArc{pivot, from, start_});
    return out;
  }

 private:
  Color color_;
  Direction start_;
  PointId initial_pivot_;
  std::vector<Stop> stops_;
};

/// Checks that every pivot belongs to the rotation's color class.
inline void check_pivots(const SlidingRotation& sr, const Instance& inst) {
  for (PointId p : sr.pivots())
    if (p >= inst.size() || inst.color(p) != sr.color())
      throw Error(ErrorCode::InvalidArgument, "sliding rotation pivot outside its color class", {p});
}

/// A plain all-red or all-blue rotation seen as a sliding rotation without
/// slides.
inline SlidingRotation lift(const RotationTrace& trace) {
  Color color;
  switch (trace.spec.subset.kind) {
    case SubsetKind::AllRed: color = Color::Red; break;
    case SubsetKind::AllBlue: color = Color::Blue; break;
    default: throw Error(ErrorCode::WrongSubset, "only all-red or all-blue rotations lift to sliding rotations");
  }
  std::vector<Stop> stops;
  for (const auto& e : trace.events)
    if (const auto* pc = std::get_if<PivotChange>(&e.change)) stops.push_back({e.at, {pc->from, pc->to}});
  SlidingRotation sr(color, trace.spec.start, trace.initial_pivot, std::move(stops));
  sr.origin = std::string(1, color_letter(color)) + "^" + std::to_string(trace.spec.k);
  sr.level = trace.spec.k;
  return sr;
}

/// Same as `lift`, for a rotation of an explicit subset of one color.
inline SlidingRotation lift_as(const RotationTrace& trace, Color color) {
  std::vector<Stop> stops;
  for (const auto& e : trace.events)
    if (const auto* pc = std::get_if<PivotChange>(&e.change)) stops.push_back({e.at, {pc->from, pc->to}});
  SlidingRotation sr(color, trace.spec.start, trace.initial_pivot, std::move(stops));
  sr.level = trace.spec.k;
  return sr;
}

/// Every line of the rotation at direction t: the path lines at a stop,
/// otherwise the single rotating line.
inline std::vector<DirectedLine> lines_at(const SlidingRotation& sr, const Instance& inst, const Direction& t) {
  std::vector<DirectedLine> out;
  if (const Stop* s = sr.stop_at(t)) {
    for (PointId p : s->path) out.push_back(DirectedLine::through(inst, p, t));
  } else {
    out.push_back(DirectedLine::through(inst, sr.pivot_before(t), t));
  }
  return out;
}

/// The line at direction t; during a slide, the leftmost of its lines.
inline DirectedLine evaluate_at(const SlidingRotation& sr, const Instance& inst, const Direction& t) {
  auto lines = lines_at(sr, inst, t);
  DirectedLine best = lines.front();
  for (const auto& l : lines)
    if (best.side(l.origin()) == Side::Left) best = l;
  return best;
}

/// Critical directions of an instance (every direction between two of its
/// points) plus extra breakpoints and their antipodes, sorted
/// counterclockwise from `origin`, with one direction strictly inside each
/// gap.
struct DirectionGrid {
  std::vector<Direction> critical;
  /// reps[i] lies strictly between critical[i] and critical[i + 1] (cyclic).
  std::vector<Direction> reps;
};

inline DirectionGrid make_grid(const Instance& inst, const Direction& origin, const std::vector<Direction>& extra = {}) {
  std::vector<Direction> dirs;
  dirs.reserve(inst.size() * inst.size() + 2 * extra.size());
  for (PointId i = 0; i < inst.size(); ++i)
    for (PointId j = 0; j < inst.size(); ++j)
      if (i != j) dirs.emplace_back(inst.pos(j) - inst.pos(i));
  for (const auto& d : extra) {
    dirs.push_back(d);
    dirs.push_back(d.antipode());
  }
  DirectionGrid g;
  g.critical = sort_unique(std::move(dirs), CyclicOrder(origin));
  for (std::size_t i = 0; i < g.critical.size(); ++i)
    g.reps.push_back(direction_between(g.critical[i], g.critical[(i + 1) % g.critical.size()]));
  return g;
}

inline std::vector<Direction> breakpoints(const SlidingRotation& sr) {
  std::vector<Direction> out{sr.start()};
  for (const auto& s : sr.stops()) out.push_back(s.at);
  return out;
}

namespace detail {

// Right-halfplane weights met while sliding at direction d from the line
// through a to the line through b, strictly between the two.
inline void slide_weights(const Instance& inst, const Direction& d, PointId a, PointId b, std::vector<int>& out) {
  Wide lo = cross(d, inst.pos(a)), hi = cross(d, inst.pos(b));
  if (lo == hi) return;
  if (lo > hi) std::swap(lo, hi);
  std::vector<Wide> inner;
  for (PointId s = 0; s < inst.size(); ++s) {
    Wide o = cross(d, inst.pos(s));
    if (o > lo && o < hi) inner.push_back(o);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  std::vector<Wide> bounds{lo};
  bounds.insert(bounds.end(), inner.begin(), inner.end());
  // Offsets below the line's offset are on its right.
  for (Wide u : bounds) {
    int w = 0;
    for (PointId s = 0; s < inst.size(); ++s)
      if (cross(d, inst.pos(s)) <= u) w += inst.weight(s);
    out.push_back(w);
  }
}

}  // namespace detail

/// Every value the right-halfplane weight takes on the open pieces of the
/// curve: each arc between the points it crosses and each slide between
/// the points it passes. Lines through a crossed point are not sampled.
inline std::vector<int> weight_values(const SlidingRotation& sr, const Instance& inst) {
  std::vector<int> out;
  const CyclicOrder order(sr.start());
  const auto& stops = sr.stops();
  PointId pivot = sr.initial_pivot();
  Direction from = sr.start();
  for (std::size_t i = 0; i <= stops.size(); ++i) {
    const bool last = i == stops.size();
    const Direction to = last ? sr.start() : stops[i].at;
    auto inside = [&](const Direction& t) { return order.less(from, t) && (last ? true : order.less(t, to)); };
    struct Crossing {
      Direction at;
      int delta;
    };
    std::vector<Crossing> crossings;
    for (PointId s = 0; s < inst.size(); ++s) {
      if (s == pivot) continue;
      Direction d(inst.pos(s) - inst.pos(pivot));
      if (inside(d)) crossings.push_back({d, inst.weight(s)});
      if (inside(d.antipode())) crossings.push_back({d.antipode(), -inst.weight(s)});
    }
    std::sort(crossings.begin(), crossings.end(), [&](const Crossing& a, const Crossing& b) { return order.less(a.at, b.at); });
    Direction first_gap_end = crossings.empty() ? to : crossings.front().at;
    int w = halfplane_weight(DirectedLine::through(inst, pivot, direction_between(from, first_gap_end)), inst, Side::Right);
    out.push_back(w);
    for (const auto& c : crossings) {
      w += c.delta;
      out.push_back(w);
    }
    if (last) break;
    const Stop& s = stops[i];
    for (std::size_t k = 0; k + 1 < s.path.size(); ++k) detail::slide_weights(inst, s.at, s.path[k], s.path[k + 1], out);
    from = s.at;
    pivot = s.path.back();
  }
  return out;
}

/// Red curves must stay at or below delta, blue ones at or above.
inline bool is_delta_preserving_sliding(const SlidingRotation& sr, const Instance& inst) {
  auto values = weight_values(sr, inst);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return sr.color() == Color::Red ? *hi <= inst.delta() : *lo >= inst.delta();
}

/// The antipodal line is strictly left of the line at t, for every t in
/// [0, pi), checked at each critical direction and inside each gap.
inline bool is_positively_oriented(const SlidingRotation& sr, const Instance& inst) {
  const DirectionGrid grid = make_grid(inst, sr.start(), breakpoints(sr));
  const CyclicOrder order(sr.start());
  auto check = [&](const Direction& t) {
    if (order.half(t) != 0) return true;
    DirectedLine a = evaluate_at(sr, inst, t);
    DirectedLine b = evaluate_at(sr, inst, t.antipode());
    return a.side(b.origin()) == Side::Left;
  };
  for (std::size_t i = 0; i < grid.critical.size(); ++i)
    if (!check(grid.critical[i]) || !check(grid.reps[i])) return false;
  return true;
}

inline std::vector<PointId> strip_members(const SlidingRotation& sr, const Instance& inst, const Direction& t) {
  DirectedLine a = evaluate_at(sr, inst, t);
  DirectedLine b = evaluate_at(sr, inst, t.antipode());
  std::vector<PointId> out;
  for (PointId s : inst.ids_of(sr.color()))
    if (a.side(inst.pos(s)) == Side::Left && b.side(inst.pos(s)) == Side::Left) out.push_back(s);
  return out;
}

struct Waist {
  int value = 0;
  /// A direction in no line through two instance points where the minimum
  /// is attained; Gamma_0 and Gamma_pi are the lines there.
  Direction achieved_at;
  DirectedLine line0;
  DirectedLine line_pi;
  std::vector<PointId> witnesses;
};

/// Minimum number of class points strictly between the line at t and the
/// line at t + pi, one evaluation per combinatorial interval. The intervals
/// come from the curve's own breakpoints and the directions in which its
/// pivots see other class points.
inline Waist waist(const SlidingRotation& sr, const Instance& inst) {
  if (!is_positively_oriented(sr, inst))
    throw Error(ErrorCode::NotPositivelyOriented, "waist is defined for positively oriented sliding rotations");
  const CyclicOrder order(sr.start());
  const auto members = inst.ids_of(sr.color());

  std::vector<Direction> events;
  for (const auto& d : breakpoints(sr)) {
    events.push_back(d);
    events.push_back(d.antipode());
  }
  for (PointId p : sr.pivots())
    for (PointId s : members)
      if (s != p) {
        Direction d(inst.pos(s) - inst.pos(p));
        events.push_back(d);
        events.push_back(d.antipode());
      }
  events = sort_unique(std::move(events), order);

  int best = std::numeric_limits<int>::max();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    Direction t = direction_between(events[i], events[(i + 1) % events.size()]);
    int count = static_cast<int>(strip_members(sr, inst, t).size());
    if (count < best) {
      best = count;
      best_index = i;
    }
  }

  // Pick a direction inside the winning interval that avoids every
  // critical direction of the instance.
  const Direction& a = events[best_index];
  const Direction& b = events[(best_index + 1) % events.size()];
  const CyclicOrder from_a(a);
  std::optional<Direction> next_critical;
  for (PointId i = 0; i < inst.size(); ++i)
    for (PointId j = 0; j < inst.size(); ++j) {
      if (i == j) continue;
      Direction d(inst.pos(j) - inst.pos(i));
      if (d == a) continue;
      if (!next_critical || from_a.less(d, *next_critical)) next_critical = d;
    }
  Direction end = (next_critical && (events.size() == 1 || from_a.less(*next_critical, b))) ? *next_critical : b;
  Direction t0 = direction_between(a, end);

  Waist w{best, t0, evaluate_at(sr, inst, t0), evaluate_at(sr, inst, t0.antipode()), strip_members(sr, inst, t0)};
  if (static_cast<int>(w.witnesses.size()) != best)
    throw Error(ErrorCode::LemmaViolation, "waist witness count disagrees with the interval minimum");
  return w;
}

/// Closed strip between the lines at t and t + pi contains the line.
inline bool in_central_region(const SlidingRotation& gamma, const Instance& inst, const DirectedLine& line) {
  const Direction& d = line.direction();
  DirectedLine a = evaluate_at(gamma, inst, d);
  DirectedLine b = evaluate_at(gamma, inst, d.antipode());
  return a.side(line.origin()) != Side::Right && b.side(line.origin()) != Side::Right;
}

// ---------------------------------------------------------------------------
// Lower-bound pipeline. Each step works on a view where the color class of
// Gamma plays the red role; with a blue Gamma the colors are exchanged and
// delta changes sign, which leaves balanced lines unchanged.

namespace detail {

struct GammaView {
  Instance inst;
  SlidingRotation gamma;
  bool swapped;
};

inline GammaView red_view(const Instance& inst, const SlidingRotation& gamma) {
  if (gamma.color() == Color::Red) return {inst, gamma, false};
  return {inst.with_swapped_colors(), gamma.recolored(Color::Red), true};
}

}  // namespace detail

struct Decomposition {
  /// Points of Gamma's class in the closed right halfplane of Gamma_0.
  std::vector<PointId> F;
  /// Points of Gamma's class in the closed right halfplane of Gamma_pi.
  std::vector<PointId> H;
  /// The rest, strictly inside the waist strip.
  std::vector<PointId> G;
  Waist waist;
};

inline Decomposition decompose_FHG(const Instance& inst, const SlidingRotation& gamma) {
  auto v = detail::red_view(inst, gamma);
  if (!is_delta_preserving_sliding(v.gamma, v.inst))
    throw Error(ErrorCode::NotDeltaPreserving, "decomposition needs a delta-preserving Gamma");
  Waist w = waist(v.gamma, v.inst);
  Decomposition dec{{}, {}, {}, w};
  for (PointId s : v.inst.ids_of(Color::Red)) {
    bool in_f = w.line0.side(v.inst.pos(s)) != Side::Left;
    bool in_h = w.line_pi.side(v.inst.pos(s)) != Side::Left;
    if (in_f && in_h) throw Error(ErrorCode::LemmaViolation, "point on both sides of the waist strip", {s});
    (in_f ? dec.F : in_h ? dec.H : dec.G).push_back(s);
  }
  return dec;
}

enum class Family { F, H };

inline char family_letter(Family f) { return f == Family::F ? 'F' : 'H'; }

/// A balanced line found by an F^k or H^k rotation in its first half turn.
struct FamilyLine {
  Family family;
  int level;
  Transition transition;
  BalancedLine line;
};

namespace detail {

inline const std::vector<PointId>& members_of(const Decomposition& dec, Family f) { return f == Family::F ? dec.F : dec.H; }

inline Direction family_start(const Decomposition& dec, Family f) {
  return f == Family::F ? dec.waist.achieved_at : dec.waist.achieved_at.antipode();
}

inline RotationTrace family_trace(const Instance& view, const Decomposition& dec, Family f, int level) {
  return run_rotation({Subset::of(members_of(dec, f)), level, family_start(dec, f)}, view);
}

}  // namespace detail

/// For every level k of F (resp. H), the F^k-rotation started at Gamma_0
/// (resp. Gamma_pi) meets a balanced delta -> delta+1 transition within its
/// first half turn, in the closed central region. One line per level.
inline std::vector<FamilyLine> lemma_FH_lines(const Instance& inst, const SlidingRotation& gamma, const Decomposition& dec) {
  auto v = detail::red_view(inst, gamma);
  const int delta = v.inst.delta();
  std::vector<FamilyLine> out;
  for (Family f : {Family::F, Family::H}) {
    const int size = static_cast<int>(detail::members_of(dec, f).size());
    const CyclicOrder order(detail::family_start(dec, f));
    for (int k = 0; k < size; ++k) {
      auto trace = detail::family_trace(v.inst, dec, f, k);
      std::optional<Transition> hit;
      for (const auto& t : transitions_at(trace, v.inst, delta))
        if (t.is_up() && t.balanced && order.half(t.at) == 0 && in_central_region(v.gamma, v.inst, t.line)) {
          hit = t;
          break;
        }
      if (!hit)
        throw Error(ErrorCode::LemmaViolation, std::string("no balanced transition in the central region for ") +
                                                   family_letter(f) + "^" + std::to_string(k));
      out.push_back({f, k, *hit, make_balanced_line(inst, hit->pivot, hit->crossed)});
    }
  }
  return out;
}

struct GLevel {
  int level;
  /// Transitions between delta and delta+1 whose line lies in the closed
  /// central region.
  std::vector<Transition> transitions;
};

inline std::vector<GLevel> lemma_G_transitions(const Instance& inst, const SlidingRotation& gamma, const Decomposition& dec) {
  auto v = detail::red_view(inst, gamma);
  std::vector<GLevel> out;
  const int g = static_cast<int>(dec.G.size());
  for (int k = 0; k < (g + 1) / 2; ++k) {
    auto trace = run_rotation({Subset::of(dec.G), k, dec.waist.achieved_at}, v.inst);
    GLevel level{k, {}};
    for (const auto& t : transitions_at(trace, v.inst, v.inst.delta()))
      if (in_central_region(v.gamma, v.inst, t.line)) level.transitions.push_back(t);
    if (level.transitions.size() < 2)
      throw Error(ErrorCode::LemmaViolation,
                  "G^" + std::to_string(k) + " has " + std::to_string(level.transitions.size()) +
                      " transition(s) in the central region, expected at least 2");
    out.push_back(std::move(level));
  }
  return out;
}

/// A G^k transition caused by a point f of F (or H): the same line is a
/// delta+1 -> delta transition of the F^j-rotation about f. Walking that
/// rotation forward, `induced` is the first balanced delta -> delta+1
/// transition in the central region whose line is not yet used; empty when
/// every such line is already taken.
struct RechargeRecord {
  Transition source;
  Family family;
  int level;
  PointId point;
  /// The delta+1 -> delta event of the family rotation, on the source line.
  Direction down_at;
  std::optional<Transition> induced;
  std::optional<BalancedLine> line;
};

using RechargeResult = std::variant<BalancedLine, RechargeRecord>;

inline RechargeResult recharge(const Instance& inst, const SlidingRotation& gamma, const Decomposition& dec,
                               const Transition& transition, const std::set<BalancedLine>& used = {}) {
  auto v = detail::red_view(inst, gamma);
  const int delta = v.inst.delta();
  const PointId x = transition.crossed;
  if (v.inst.color(x) == Color::Blue) {
    if (!transition.balanced)
      throw Error(ErrorCode::UnclassifiableTransition, "crossing of the other class is not balanced", {x});
    return make_balanced_line(inst, transition.pivot, x);
  }
  auto contains = [](const std::vector<PointId>& s, PointId p) { return std::find(s.begin(), s.end(), p) != s.end(); };
  std::optional<Family> fam;
  if (contains(dec.F, x)) fam = Family::F;
  if (contains(dec.H, x)) fam = Family::H;
  if (!fam) throw Error(ErrorCode::UnclassifiableTransition, "transition crosses a point outside F and H", {x});

  const PointId g = transition.pivot;
  const auto& members = detail::members_of(dec, *fam);
  // Orient the line so that g lies ahead of x: then g enters the right side.
  const Direction down_at(v.inst.pos(g) - v.inst.pos(x));
  auto line = DirectedLine::through(v.inst, x, down_at);
  int level = 0;
  for (PointId s : members) level += line.side(v.inst.pos(s)) == Side::Right;

  auto trace = detail::family_trace(v.inst, dec, *fam, level);
  auto ev = std::find_if(trace.events.begin(), trace.events.end(), [&](const RotationEvent& e) { return e.at == down_at; });
  const WeightChange* wc = ev == trace.events.end() ? nullptr : std::get_if<WeightChange>(&ev->change);
  if (!wc || ev->line.anchor() != x || wc->crossed != g || wc->from != delta + 1 || wc->to != delta)
    throw Error(ErrorCode::UnclassifiableTransition,
                "no delta+1 -> delta transition of " + std::string(1, family_letter(*fam)) + "^" +
                    std::to_string(level) + " on the transition line",
                {x, g});

  // Walk the family rotation forward from the down step.
  const std::size_t n = trace.events.size();
  const std::size_t start = static_cast<std::size_t>(ev - trace.events.begin());
  for (std::size_t step = 1; step <= n; ++step) {
    const RotationEvent& e = trace.events[(start + step) % n];
    const auto* up = std::get_if<WeightChange>(&e.change);
    if (!up || up->from != delta || up->to != delta + 1) continue;
    PointId pivot = e.line.anchor();
    if (v.inst.color(up->crossed) != Color::Blue) continue;
    if (!in_central_region(v.gamma, v.inst, e.line)) continue;
    BalancedLine bl = make_balanced_line(inst, pivot, up->crossed);
    if (used.count(bl)) continue;
    if (!is_balanced(pivot, up->crossed, v.inst))
      throw Error(ErrorCode::LemmaViolation, "blue crossing at delta -> delta+1 is not balanced", {pivot, up->crossed});
    Transition induced{e.at, up->from, up->to, e.line, true, pivot, up->crossed, up->end};
    return RechargeRecord{transition, *fam, level, x, down_at, induced, bl};
  }
  return RechargeRecord{transition, *fam, level, x, down_at, std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------
// Gamma search.

namespace detail {

struct Candidate {
  SlidingRotation sr;
  Waist waist;
};

// Lexicographic: waist, red before blue, level, earliest achieving direction.
inline bool better(const Candidate& a, const Candidate& b) {
  if (a.waist.value != b.waist.value) return a.waist.value < b.waist.value;
  if (a.sr.color() != b.sr.color()) return a.sr.color() == Color::Red;
  if (a.sr.level != b.sr.level) return a.sr.level < b.sr.level;
  return CyclicOrder().less(a.waist.achieved_at, b.waist.achieved_at);
}

inline std::optional<Candidate> admit(const Instance& inst, SlidingRotation sr) {
  if (!is_delta_preserving_sliding(sr, inst) || !is_positively_oriented(sr, inst)) return std::nullopt;
  Waist w = waist(sr, inst);
  return Candidate{std::move(sr), std::move(w)};
}

// Follows `base` outside [t1, t2] and `inner` inside, joining them by a
// pivot change or slide at t1 and t2. Directions relative to base.start().
inline SlidingRotation splice(const SlidingRotation& base, const SlidingRotation& inner, const Direction& t1,
                              const Direction& t2, Color color) {
  const CyclicOrder order(base.start());
  std::vector<Stop> stops;
  auto push = [&](Stop s) {
    s.path.erase(std::unique(s.path.begin(), s.path.end()), s.path.end());
    if (s.path.size() > 1) stops.push_back(std::move(s));
  };
  for (const auto& s : base.stops())
    if (order.less(s.at, t1)) push(s);
  push({t1, {base.pivot_before(t1), inner.pivot_after(t1)}});
  std::vector<Stop> middle;
  for (const auto& s : inner.stops())
    if (order.less(t1, s.at) && order.less(s.at, t2)) middle.push_back(s);
  std::sort(middle.begin(), middle.end(), [&](const Stop& a, const Stop& b) { return order.less(a.at, b.at); });
  for (auto& s : middle) push(s);
  if (!(t1 == t2)) push({t2, {inner.pivot_before(t2), base.pivot_after(t2)}});
  for (const auto& s : base.stops())
    if (order.less(t2, s.at)) push(s);
  SlidingRotation out(color, base.start(), base.initial_pivot(), std::move(stops));
  out.origin = "splice";
  return out;
}

// Gamma improved by cutting in the G^k-rotation outside its first and last
// coincidence with Gamma.
inline std::optional<SlidingRotation> splice_candidate(const Instance& view, const SlidingRotation& gamma,
                                                       const RotationTrace& gk) {
  SlidingRotation a = lift_as(gk, Color::Red);
  auto extra = breakpoints(gamma);
  auto more = breakpoints(a);
  extra.insert(extra.end(), more.begin(), more.end());
  DirectionGrid grid = make_grid(view, a.start(), extra);
  std::optional<Direction> t1, t2;
  auto probe = [&](const Direction& t) {
    DirectedLine la = evaluate_at(a, view, t);
    DirectedLine lg = evaluate_at(gamma, view, t);
    if (la.same_as(lg)) {
      if (!t1) t1 = t;
      t2 = t;
    }
  };
  // The grid starts at the first critical direction after a.start().
  for (std::size_t i = 0; i < grid.critical.size(); ++i) {
    probe(grid.critical[i]);
    probe(grid.reps[i]);
  }
  if (!t1) return a;
  SlidingRotation out = splice(a, gamma, *t1, *t2, Color::Red);
  return out;
}

// Blue sliding rotation through the first blue point right of G^k_t.
inline std::optional<SlidingRotation> shift_candidate(const Instance& view, const RotationTrace& gk) {
  DirectionGrid grid = make_grid(view, gk.spec.start);
  auto first_blue = [&](const Direction& t) -> std::optional<PointId> {
    PointId g = gk.interval_at(t).pivot;
    Wide limit = cross(t, view.pos(g));
    std::optional<PointId> best;
    for (PointId s : view.ids_of(Color::Blue)) {
      Wide o = cross(t, view.pos(s));
      if (o < limit && (!best || o > cross(t, view.pos(*best)))) best = s;
    }
    return best;
  };
  auto initial = first_blue(gk.spec.start);
  if (!initial) return std::nullopt;
  std::vector<Stop> stops;
  PointId cur = *initial;
  for (std::size_t i = 0; i < grid.critical.size(); ++i) {
    auto next = first_blue(grid.reps[i]);
    if (!next) return std::nullopt;
    if (*next != cur) stops.push_back({grid.critical[i], {cur, *next}});
    cur = *next;
  }
  SlidingRotation out(Color::Blue, gk.spec.start, *initial, std::move(stops));
  out.origin = "shift";
  return out;
}

inline std::optional<Candidate> best_plain_candidate(const Instance& inst) {
  std::optional<Candidate> best;
  for (Color c : {Color::Red, Color::Blue}) {
    const int m = c == Color::Red ? inst.r() : inst.b();
    for (int k = 0; k < m; ++k) {
      auto trace = run_rotation({Subset::all(c), k, Direction::vertical()}, inst);
      // A lifted plain rotation takes exactly the values of its profile.
      bool preserving = c == Color::Red ? trace.max_omega() <= inst.delta() : trace.min_omega() >= inst.delta();
      if (!preserving) continue;
      SlidingRotation sr = lift(trace);
      if (!is_positively_oriented(sr, inst)) continue;
      Candidate cand{sr, waist(sr, inst)};
      if (!best || better(cand, *best)) best = std::move(cand);
    }
  }
  return best;
}

}  // namespace detail

inline constexpr int kMaxGammaImprovements = 64;

/// Minimum-waist member of the candidate family: delta-preserving,
/// positively oriented lifts of plain red and blue rotations, then repeated
/// surgery with G^k-rotations whenever a G level lacks two central
/// transitions, as long as the waist strictly drops. Empty when no plain
/// rotation qualifies.
inline std::optional<SlidingRotation> find_gamma(const Instance& inst) {
  auto best = detail::best_plain_candidate(inst);
  if (!best) return std::nullopt;

  for (int round = 0; round < kMaxGammaImprovements; ++round) {
    auto v = detail::red_view(inst, best->sr);
    Decomposition dec = decompose_FHG(inst, best->sr);
    const int g = static_cast<int>(dec.G.size());
    std::optional<detail::Candidate> improved;
    for (int k = 0; k < (g + 1) / 2 && !improved; ++k) {
      auto trace = run_rotation({Subset::of(dec.G), k, dec.waist.achieved_at}, v.inst);
      int central = 0;
      for (const auto& t : transitions_at(trace, v.inst, v.inst.delta()))
        central += in_central_region(v.gamma, v.inst, t.line);
      if (central >= 2) continue;
      std::vector<SlidingRotation> options;
      if (auto s = detail::splice_candidate(v.inst, v.gamma, trace)) options.push_back(*s);
      if (auto s = detail::shift_candidate(v.inst, trace)) options.push_back(*s);
      for (auto& o : options) {
        auto cand = detail::admit(v.inst, o);
        if (!cand || cand->waist.value >= best->waist.value) continue;
        if (v.swapped) cand->sr = cand->sr.recolored(other(cand->sr.color()));
        if (!improved || cand->waist.value < improved->waist.value) improved = cand;
      }
    }
    if (!improved) break;
    // Recompute the waist in the original coloring.
    best = detail::Candidate{improved->sr, waist(improved->sr, inst)};
  }
  return best->sr;
}

// ---------------------------------------------------------------------------
// Certificate.

enum class ProvenanceKind { Transition, Halving, FRotation, HRotation, GRotationDirect, Recharged };

struct Provenance {
  ProvenanceKind kind;
  /// Rotation level that produced the line (for Recharged: the G level).
  int level = 0;
  /// Recharged only: family and level of the rotation holding the new line.
  Family family = Family::F;
  int family_level = 0;
};

inline std::string to_string(const Provenance& p) {
  switch (p.kind) {
    case ProvenanceKind::Transition: return "transition(R^" + std::to_string(p.level) + ")";
    case ProvenanceKind::Halving: return "halving";
    case ProvenanceKind::FRotation: return "F^" + std::to_string(p.level);
    case ProvenanceKind::HRotation: return "H^" + std::to_string(p.level);
    case ProvenanceKind::GRotationDirect: return "G^" + std::to_string(p.level);
    case ProvenanceKind::Recharged:
      return "recharge(G^" + std::to_string(p.level) + "->" + family_letter(p.family) + "^" +
             std::to_string(p.family_level) + ")";
  }
  return "?";
}

struct CertifiedLine {
  BalancedLine line;
  Provenance provenance;
};

struct Certificate {
  std::optional<SlidingRotation> gamma;
  std::optional<Waist> waist;
  std::vector<PointId> F, H, G;
  std::vector<CertifiedLine> lines;
  int total = 0;
  /// Lines the accounting aims for: |F| + |H| + |G|, that is r for a red
  /// Gamma and b for a blue one; r without Gamma.
  int target = 0;
  /// Every recharge attempted, in order.
  std::vector<RechargeRecord> recharges;
  /// Recharges whose family rotation had no unused balanced line left.
  int exhausted_recharges = 0;
  /// G levels that resolved fewer lines than their quota.
  std::vector<int> short_levels;
};

namespace detail {

inline void add_line(Certificate& cert, std::set<BalancedLine>& used, const BalancedLine& line, Provenance prov) {
  if (!used.insert(line).second)
    throw Error(ErrorCode::CertificateFailure, "line " + std::to_string(line.red) + "-" + std::to_string(line.blue) +
                                                   " certified twice",
                {line.red, line.blue});
  cert.lines.push_back({line, prov});
}

// No delta-preserving member: every red level below r/2 moves across delta
// and each contributes one up and one down transition, plus the halving
// line when r is odd.
inline void certify_by_transitions(const Instance& inst, Certificate& cert, std::set<BalancedLine>& used) {
  for (int k = 0; k < inst.r() / 2; ++k) {
    auto trace = run_rotation({Subset::all_red(), k, Direction::vertical()}, inst);
    auto ts = transitions_at(trace, inst, inst.delta());
    auto up = std::find_if(ts.begin(), ts.end(), [](const Transition& t) { return t.is_up(); });
    auto down = std::find_if(ts.begin(), ts.end(), [](const Transition& t) { return !t.is_up(); });
    if (up == ts.end() || down == ts.end())
      throw Error(ErrorCode::CertificateFailure,
                  "R^" + std::to_string(k) + " is delta-preserving but no Gamma candidate was found");
    for (auto it : {up, down}) {
      if (!it->balanced) throw Error(ErrorCode::LemmaViolation, "red rotation transition is not balanced");
      add_line(cert, used, balanced_line_of(inst, *it), {ProvenanceKind::Transition, k});
    }
  }
  if (inst.r() % 2 == 1) add_line(cert, used, find_balanced_halving(inst), {ProvenanceKind::Halving, inst.r() / 2});
}

}  // namespace detail

/// Builds a certificate of at least r distinct balanced lines from a given
/// Gamma (or from plain red rotations when there is none), each line traced
/// to the rotation step that produced it, and checks it against the
/// exhaustive enumeration.
inline Certificate certify(const Instance& inst, const std::optional<SlidingRotation>& gamma) {
  Certificate cert;
  cert.target = inst.r();
  std::set<BalancedLine> used;
  if (inst.r() > 0) {
    if (!gamma) {
      detail::certify_by_transitions(inst, cert, used);
    } else {
      Decomposition dec = decompose_FHG(inst, *gamma);
      cert.gamma = gamma;
      cert.waist = dec.waist;
      cert.F = dec.F;
      cert.H = dec.H;
      cert.G = dec.G;
      cert.target = gamma->color() == Color::Red ? inst.r() : inst.b();

      for (const auto& fl : lemma_FH_lines(inst, *gamma, dec))
        detail::add_line(cert, used, fl.line,
                         {fl.family == Family::F ? ProvenanceKind::FRotation : ProvenanceKind::HRotation, fl.level});

      const int g = static_cast<int>(dec.G.size());
      for (const auto& level : lemma_G_transitions(inst, *gamma, dec)) {
        const int quota = (g % 2 == 1 && level.level == g / 2) ? 1 : 2;
        int got = 0;
        for (const auto& t : level.transitions) {
          if (got == quota) break;
          auto res = recharge(inst, *gamma, dec, t, used);
          if (const auto* line = std::get_if<BalancedLine>(&res)) {
            if (used.count(*line)) continue;
            detail::add_line(cert, used, *line, {ProvenanceKind::GRotationDirect, level.level});
          } else {
            const auto& rec = std::get<RechargeRecord>(res);
            cert.recharges.push_back(rec);
            if (!rec.line) {
              ++cert.exhausted_recharges;
              continue;
            }
            detail::add_line(cert, used, *rec.line, {ProvenanceKind::Recharged, level.level, rec.family, rec.level});
          }
          ++got;
        }
        if (got < quota) cert.short_levels.push_back(level.level);
      }
    }
  }
  cert.total = static_cast<int>(cert.lines.size());

  auto oracle = enumerate_naive(inst);
  for (const auto& cl : cert.lines)
    if (!oracle.count(cl.line))
      throw Error(ErrorCode::CertificateFailure, "certified line is not balanced", {cl.line.red, cl.line.blue});
  if (cert.total < inst.r())
    throw Error(ErrorCode::CertificateFailure,
                "certified " + std::to_string(cert.total) + " lines, need " + std::to_string(inst.r()));
  return cert;
}

/// Certificate for the Gamma chosen by find_gamma.
inline Certificate verify_lower_bound(const Instance& inst) {
  return certify(inst, inst.r() > 0 ? find_gamma(inst) : std::nullopt);
}

}  // namespace balanced
