#pragma once

#include "balanced/instance.hpp"
#include "balanced/oracle.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace balanced {

enum class SubsetKind { AllRed, AllBlue, Explicit };

/// Selects the point set P a rotation keeps k points of on its right.
struct Subset {
  SubsetKind kind = SubsetKind::AllRed;
  std::vector<PointId> ids;

  static Subset all_red() { return {SubsetKind::AllRed, {}}; }
  static Subset all_blue() { return {SubsetKind::AllBlue, {}}; }
  static Subset of(std::vector<PointId> ids) { return {SubsetKind::Explicit, std::move(ids)}; }
  static Subset all(Color c) { return c == Color::Red ? all_red() : all_blue(); }

  std::vector<PointId> members(const Instance& inst) const {
    switch (kind) {
      case SubsetKind::AllRed: return inst.ids_of(Color::Red);
      case SubsetKind::AllBlue: return inst.ids_of(Color::Blue);
      case SubsetKind::Explicit: break;
    }
    std::vector<PointId> out = ids;
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
      throw Error(ErrorCode::InvalidArgument, "subset lists a point twice");
    for (PointId id : out)
      if (id >= inst.size()) throw Error(ErrorCode::InvalidArgument, "subset id out of range", {id});
    return out;
  }
};

struct RotationSpec {
  Subset subset;
  int k = 0;
  Direction start = Direction::vertical();
};

enum class LineEnd { Head, Tail };

inline const char* to_string(LineEnd e) { return e == LineEnd::Head ? "head" : "tail"; }

struct PivotChange {
  PointId from;
  PointId to;
};

struct WeightChange {
  PointId crossed;
  int from;
  int to;
  LineEnd end;
};

/// One critical direction of a rotation. `line` is the line at that
/// direction through the old pivot and the point it meets; `pivot` and
/// `omega` describe the state right after the event.
struct RotationEvent {
  Direction at;
  std::variant<PivotChange, WeightChange> change;
  DirectedLine line;
  PointId pivot;
  int omega;

  bool is_pivot_change() const { return std::holds_alternative<PivotChange>(change); }
};

/// Constant state on the open arc (from, to); `sample` lies strictly inside.
struct ProfileInterval {
  Direction from;
  Direction to;
  Direction sample;
  PointId pivot;
  int omega;
};

struct RotationTrace {
  RotationSpec spec;
  std::vector<PointId> members;
  PointId initial_pivot = 0;
  int initial_omega = 0;
  std::vector<RotationEvent> events;
  /// events.size() + 1 arcs: start -> e0, e0 -> e1, ..., e_last -> start.
  std::vector<ProfileInterval> profile;

  int min_omega() const {
    return std::min_element(profile.begin(), profile.end(), [](auto& a, auto& b) { return a.omega < b.omega; })->omega;
  }
  int max_omega() const {
    return std::max_element(profile.begin(), profile.end(), [](auto& a, auto& b) { return a.omega < b.omega; })->omega;
  }
  bool contains(PointId id) const { return std::binary_search(members.begin(), members.end(), id); }

  /// State on the arc containing t; t must not be an event direction.
  const ProfileInterval& interval_at(const Direction& t) const {
    CyclicOrder order(spec.start);
    auto it = std::lower_bound(events.begin(), events.end(), t,
                               [&](const RotationEvent& e, const Direction& d) { return order.less(e.at, d); });
    return profile[static_cast<std::size_t>(it - events.begin())];
  }
};

/// True when no line through two instance points is parallel to d.
inline bool is_generic_direction(const Instance& inst, const Direction& d) {
  for (PointId i = 0; i < inst.size(); ++i)
    for (PointId j = i + 1; j < inst.size(); ++j)
      if (cross(d, inst.pos(j) - inst.pos(i)) == 0) return false;
  return true;
}

/// The point of `members` with exactly k others strictly to the right of
/// the line through it with direction d.
inline PointId level_pivot(const Instance& inst, const std::vector<PointId>& members, int k, const Direction& d) {
  std::vector<PointId> sorted = members;
  // Right of the line through p means cross(d, s) < cross(d, p).
  std::sort(sorted.begin(), sorted.end(),
            [&](PointId a, PointId b) { return cross(d, inst.pos(a)) < cross(d, inst.pos(b)); });
  return sorted[static_cast<std::size_t>(k)];
}

/// Simulates a P^k-rotation: a directed line through one point of P that
/// turns counterclockwise a full turn from `spec.start` while keeping exactly
/// k points of P strictly on its right.
inline RotationTrace run_rotation(const RotationSpec& spec, const Instance& inst) {
  RotationTrace trace;
  trace.spec = spec;
  trace.members = spec.subset.members(inst);
  const auto& members = trace.members;
  if (members.empty()) throw Error(ErrorCode::LevelOutOfRange, "rotation subset is empty");
  if (spec.k < 0 || spec.k >= static_cast<int>(members.size()))
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(spec.k) + " outside 0.." + std::to_string(members.size() - 1));
  if (!is_generic_direction(inst, spec.start))
    throw Error(ErrorCode::DegenerateDirection, "start direction is parallel to a line through two points");

  std::vector<char> in_p(inst.size(), 0);
  for (PointId id : members) in_p[id] = 1;

  trace.initial_pivot = level_pivot(inst, members, spec.k, spec.start);
  trace.initial_omega =
      halfplane_weight(DirectedLine::through(inst, trace.initial_pivot, spec.start), inst, Side::Right);

  struct Entry {
    Direction at;
    PointId pivot;
    PointId other;
    LineEnd end;
  };
  std::vector<Entry> entries;
  entries.reserve(2 * members.size() * inst.size());
  for (PointId p : members)
    for (PointId q = 0; q < inst.size(); ++q) {
      if (q == p) continue;
      Direction d(inst.pos(q) - inst.pos(p));
      entries.push_back({d, p, q, LineEnd::Head});
      entries.push_back({d.antipode(), p, q, LineEnd::Tail});
    }
  const CyclicOrder order(spec.start);
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) { return order.less(a.at, b.at); });

  PointId pivot = trace.initial_pivot;
  int omega = trace.initial_omega;
  Direction last = spec.start;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    const Entry* hit = nullptr;
    for (; j < entries.size() && entries[j].at == entries[i].at; ++j)
      if (entries[j].pivot == pivot && hit == nullptr) hit = &entries[j];
    i = j;
    if (!hit) continue;

    const ProfileInterval before{last, hit->at, direction_between(last, hit->at), pivot, omega};
    trace.profile.push_back(before);
    DirectedLine line = DirectedLine::through(inst, pivot, hit->at, hit->other);
    if (in_p[hit->other]) {
      trace.events.push_back({hit->at, PivotChange{pivot, hit->other}, line, hit->other, omega});
      pivot = hit->other;
    } else {
      int w = inst.weight(hit->other);
      int next = hit->end == LineEnd::Head ? omega + w : omega - w;
      trace.events.push_back({hit->at, WeightChange{hit->other, omega, next, hit->end}, line, pivot, next});
      omega = next;
    }
    last = hit->at;
  }
  trace.profile.push_back({last, spec.start, direction_between(last, spec.start), pivot, omega});

  if (pivot != trace.initial_pivot || omega != trace.initial_omega)
    throw Error(ErrorCode::LemmaViolation, "rotation did not return to its initial state");
  return trace;
}

/// A step of the right-halfplane weight between `low` and `low + 1`.
struct Transition {
  Direction at;
  int from;
  int to;
  DirectedLine line;
  bool balanced;
  PointId pivot;
  PointId crossed;
  LineEnd end;

  bool is_up() const { return to > from; }
};

inline std::vector<Transition> transitions_at(const RotationTrace& trace, const Instance& inst, int low) {
  std::vector<Transition> out;
  for (const auto& e : trace.events) {
    const auto* wc = std::get_if<WeightChange>(&e.change);
    if (!wc) continue;
    if (std::min(wc->from, wc->to) != low) continue;
    PointId pivot = e.line.anchor();
    bool balanced = inst.color(pivot) != inst.color(wc->crossed) &&
                    halfplane_weight(e.line, inst, Side::Right) == inst.delta() &&
                    halfplane_weight(e.line, inst, Side::Left) == inst.delta();
    out.push_back({e.at, wc->from, wc->to, e.line, balanced, pivot, wc->crossed, wc->end});
  }
  return out;
}

/// Red rotations: max <= delta or min > delta. Blue rotations: min >= delta
/// or max < delta.
inline bool is_delta_preserving(const RotationTrace& trace, const Instance& inst) {
  const int delta = inst.delta();
  switch (trace.spec.subset.kind) {
    case SubsetKind::AllRed: return trace.max_omega() <= delta || trace.min_omega() > delta;
    case SubsetKind::AllBlue: return trace.min_omega() >= delta || trace.max_omega() < delta;
    case SubsetKind::Explicit: break;
  }
  throw Error(ErrorCode::WrongSubset, "delta-preservation is defined for all-red or all-blue rotations");
}

inline BalancedLine balanced_line_of(const Instance& inst, const Transition& t) {
  return make_balanced_line(inst, t.pivot, t.crossed);
}

/// For odd r, a balanced line with (r + b - 2) / 2 points on each side,
/// taken from the R^{floor(r/2)}-rotation. Its up and down transitions are
/// the same line traversed half a turn apart.
inline BalancedLine find_balanced_halving(const Instance& inst) {
  if (inst.r() % 2 == 0) throw Error(ErrorCode::EvenR, "halving balanced line needs odd r");
  const int k = inst.r() / 2;
  RotationTrace trace = run_rotation({Subset::all_red(), k, Direction::vertical()}, inst);
  auto ts = transitions_at(trace, inst, inst.delta());
  const int half = (static_cast<int>(inst.size()) - 2) / 2;
  for (const auto& t : ts) {
    if (!t.balanced || !t.is_up()) continue;
    int right = 0, left = 0;
    for (PointId s = 0; s < inst.size(); ++s) {
      Side side = t.line.side(inst.pos(s));
      right += side == Side::Right;
      left += side == Side::Left;
    }
    bool paired = std::any_of(ts.begin(), ts.end(), [&](const Transition& o) {
      return !o.is_up() && o.at == t.at.antipode() && o.line.same_undirected(t.line);
    });
    if (right == half && left == half && paired) return balanced_line_of(inst, t);
  }
  throw Error(ErrorCode::LemmaViolation, "no balanced halving line in the middle red rotation");
}

/// Evaluates both implications linking R^j and B^{j+delta}:
/// R^j > delta implies B^{j+delta} >= delta, and B^{j+delta} < delta
/// implies R^j <= delta.
inline bool check_lemma_BR(const Instance& inst, int j) {
  const int delta = inst.delta();
  if (inst.r() < 1 || j < 0 || j > inst.r() / 2 || j + delta > inst.b() - 1)
    throw Error(ErrorCode::LevelOutOfRange, "need 0 <= j <= floor(r/2) and j + delta <= b - 1");
  RotationTrace red = run_rotation({Subset::all_red(), j, Direction::vertical()}, inst);
  RotationTrace blue = run_rotation({Subset::all_blue(), j + delta, Direction::vertical()}, inst);
  bool first = !(red.min_omega() > delta) || blue.min_omega() >= delta;
  bool second = !(blue.max_omega() < delta) || red.max_omega() <= delta;
  return first && second;
}

}  // namespace balanced
