#include "balanced/generators.hpp"
#include "balanced/rotation.hpp"

#include <gtest/gtest.h>

using namespace balanced;

namespace {

Instance random_small(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 1);
  int delta = static_cast<int>(detail::draw(rng, 0, 3));
  int max_r = (30 - 2 * delta) / 2;
  int r = static_cast<int>(detail::draw(rng, delta == 0 ? 1 : 0, max_r));
  return gen_random(seed, r, r + 2 * delta, 200);
}

// Independent recount at a direction strictly inside a profile arc: the
// pivot is the member with exactly k members strictly right, found by
// brute force over all members.
void expect_state_matches_recount(const Instance& inst, const RotationTrace& trace, const ProfileInterval& iv) {
  int found = 0;
  for (PointId p : trace.members) {
    auto line = DirectedLine::through(inst, p, iv.sample);
    int right = 0;
    for (PointId q : trace.members) right += line.side(inst.pos(q)) == Side::Right;
    if (right != trace.spec.k) continue;
    ++found;
    EXPECT_EQ(p, iv.pivot);
    EXPECT_EQ(halfplane_weight(line, inst, Side::Right), iv.omega);
  }
  EXPECT_EQ(found, 1);
}

}  // namespace

TEST(RunRotation, SinglePointSubsetNeverChangesPivot) {
  Instance inst = gen_random(21, 3, 5, 100);
  auto trace = run_rotation({Subset::of({0}), 0, Direction::vertical()}, inst);
  int weight_changes = 0;
  for (const auto& e : trace.events) {
    EXPECT_FALSE(e.is_pivot_change());
    weight_changes += !e.is_pivot_change();
    EXPECT_EQ(e.pivot, 0u);
  }
  EXPECT_EQ(weight_changes, 2 * (static_cast<int>(inst.size()) - 1));
}

TEST(RunRotation, TwoPointSubsetChangesPivotTwice) {
  Instance inst = gen_random(22, 3, 5, 100);
  for (int k = 0; k <= 1; ++k) {
    auto trace = run_rotation({Subset::of({1, 4}), k, Direction::vertical()}, inst);
    int pivots = 0;
    for (const auto& e : trace.events) pivots += e.is_pivot_change();
    EXPECT_EQ(pivots, 2);
  }
}

TEST(RunRotation, ProfileMatchesRecount) {
  Instance inst = gen_random(3, 4, 4, 100);
  auto trace = run_rotation({Subset::all_red(), 1, Direction::vertical()}, inst);
  ASSERT_EQ(trace.profile.size(), trace.events.size() + 1);
  for (const auto& iv : trace.profile) expect_state_matches_recount(inst, trace, iv);
}

TEST(RunRotation, InvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_small(seed);
    for (Color c : {Color::Red, Color::Blue}) {
      auto members = inst.ids_of(c);
      for (int k = 0; k < static_cast<int>(members.size()); ++k) {
        auto trace = run_rotation({Subset::all(c), k, Direction::vertical()}, inst);
        for (const auto& iv : trace.profile) expect_state_matches_recount(inst, trace, iv);
        // Closure.
        EXPECT_EQ(trace.profile.front().omega, trace.profile.back().omega);
        EXPECT_EQ(trace.profile.front().pivot, trace.profile.back().pivot);
        int prev = trace.initial_omega;
        for (const auto& e : trace.events) {
          if (const auto* wc = std::get_if<WeightChange>(&e.change)) {
            EXPECT_EQ(std::abs(wc->to - wc->from), 1);
            EXPECT_EQ(wc->from, prev);
            // Points of the rotated class always trigger a pivot change.
            EXPECT_NE(inst.color(wc->crossed), c);
            EXPECT_NE(wc->crossed, e.pivot);
          } else {
            EXPECT_EQ(e.omega, prev);
          }
          prev = e.omega;
        }
      }
    }
  }
}

TEST(RunRotation, AntipodalStructure) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = random_small(seed);
    const int m = inst.r();
    for (int k = 0; k < m; ++k) {
      auto trace = run_rotation({Subset::all_red(), k, Direction::vertical()}, inst);
      auto mirror = run_rotation({Subset::all_red(), m - 1 - k, Direction::vertical()}, inst);
      for (const auto& iv : trace.profile) {
        const auto& opp = mirror.interval_at(iv.sample.antipode());
        EXPECT_EQ(opp.pivot, iv.pivot);
        // Reversed line: total = right + left + pivot weight.
        EXPECT_EQ(iv.omega + opp.omega - 1, 2 * inst.delta());
      }
    }
  }
}

TEST(RunRotation, RejectsBadSpecs) {
  Instance inst = gen_random(2, 2, 4, 100);
  EXPECT_THROW(run_rotation({Subset::all_red(), 2, Direction::vertical()}, inst), Error);
  EXPECT_THROW(run_rotation({Subset::all_red(), -1, Direction::vertical()}, inst), Error);
  EXPECT_THROW(run_rotation({Subset::of({}), 0, Direction::vertical()}, inst), Error);
  Direction along(inst.pos(1) - inst.pos(0));
  EXPECT_THROW(run_rotation({Subset::all_red(), 0, along}, inst), Error);
}

TEST(TransitionsAt, RedTransitionsAreBalancedBlueCrossings) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = random_small(seed);
    auto oracle = enumerate_naive(inst);
    for (int k = 0; k < inst.r(); ++k) {
      auto trace = run_rotation({Subset::all_red(), k, Direction::vertical()}, inst);
      for (const auto& t : transitions_at(trace, inst, inst.delta())) {
        EXPECT_EQ(inst.color(t.crossed), Color::Blue);
        EXPECT_EQ(t.end, t.is_up() ? LineEnd::Head : LineEnd::Tail);
        EXPECT_TRUE(t.balanced);
        EXPECT_TRUE(oracle.count(balanced_line_of(inst, t))) << "seed " << seed;
      }
    }
  }
}

TEST(TransitionsAt, BlueTransitionsBelowDeltaAreBalanced) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Instance inst = random_small(seed);
    auto oracle = enumerate_naive(inst);
    for (int k = 0; k < inst.b(); ++k) {
      auto trace = run_rotation({Subset::all_blue(), k, Direction::vertical()}, inst);
      for (const auto& t : transitions_at(trace, inst, inst.delta() - 1)) {
        EXPECT_EQ(inst.color(t.crossed), Color::Red);
        EXPECT_TRUE(t.balanced);
        EXPECT_TRUE(oracle.count(balanced_line_of(inst, t)));
      }
    }
  }
}

TEST(TransitionsAt, ConstantProfileHasNone) {
  // Only blue points: crossings never happen, the profile is constant.
  Instance inst = gen_random(8, 0, 4, 100);
  auto trace = run_rotation({Subset::all_blue(), 1, Direction::vertical()}, inst);
  EXPECT_EQ(trace.min_omega(), trace.max_omega());
  for (int low = -5; low <= 5; ++low) EXPECT_TRUE(transitions_at(trace, inst, low).empty());
}

TEST(IsDeltaPreserving, SeparatedOctagonHasOneUpOneDown) {
  Instance inst = gen_separated_convex(4, 4);
  auto trace = run_rotation({Subset::all_red(), 0, Direction::vertical()}, inst);
  EXPECT_FALSE(is_delta_preserving(trace, inst));
  auto ts = transitions_at(trace, inst, inst.delta());
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_NE(ts[0].is_up(), ts[1].is_up());
}

TEST(IsDeltaPreserving, AgreesWithRecountedRange) {
  int preserving_seen = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_small(seed);
    for (Color c : {Color::Red, Color::Blue})
      for (int k = 0; k < static_cast<int>(inst.ids_of(c).size()); ++k) {
        auto trace = run_rotation({Subset::all(c), k, Direction::vertical()}, inst);
        int lo = 1 << 20, hi = -(1 << 20);
        for (const auto& iv : trace.profile) {
          int w = halfplane_weight(DirectedLine::through(inst, iv.pivot, iv.sample), inst, Side::Right);
          lo = std::min(lo, w);
          hi = std::max(hi, w);
        }
        const int d = inst.delta();
        bool expected = c == Color::Red ? (hi <= d || lo > d) : (lo >= d || hi < d);
        EXPECT_EQ(is_delta_preserving(trace, inst), expected);
        preserving_seen += expected;
      }
  }
  EXPECT_GT(preserving_seen, 0);
}

TEST(IsDeltaPreserving, ExplicitSubsetIsRejected) {
  Instance inst = gen_random(2, 2, 4, 100);
  auto trace = run_rotation({Subset::of({0, 3}), 0, Direction::vertical()}, inst);
  try {
    is_delta_preserving(trace, inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongSubset);
  }
}

// With no delta-preserving red rotation, the transitions of the levels below
// r/2 and the halving line already give r distinct balanced lines.
TEST(IsDeltaPreserving, NonPreservingRotationsCertifyBound) {
  int exercised = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    Instance inst = random_small(seed);
    if (inst.r() == 0) continue;
    auto oracle = enumerate_naive(inst);
    for (Color c : {Color::Red, Color::Blue}) {
      const int m = c == Color::Red ? inst.r() : inst.b();
      const int first = c == Color::Red ? 0 : inst.delta();
      const int low = c == Color::Red ? inst.delta() : inst.delta() - 1;
      bool any = false;
      for (int k = first; k < m; ++k)
        any |= is_delta_preserving(run_rotation({Subset::all(c), k, Direction::vertical()}, inst), inst);
      if (any) continue;
      ++exercised;
      std::set<BalancedLine> lines;
      for (int k = first; k <= first + inst.r() / 2 && k < m; ++k)
        for (const auto& t : transitions_at(run_rotation({Subset::all(c), k, Direction::vertical()}, inst), inst, low)) {
          EXPECT_TRUE(t.balanced);
          lines.insert(balanced_line_of(inst, t));
        }
      EXPECT_GE(lines.size(), static_cast<std::size_t>(inst.r())) << "seed " << seed;
      for (const auto& l : lines) EXPECT_TRUE(oracle.count(l));
    }
  }
  EXPECT_GT(exercised, 10);
}

TEST(FindBalancedHalving, TwoPoints) {
  Instance inst = validate({{Rational(0), Rational(0), Color::Red, 0}, {Rational(1), Rational(1), Color::Blue, 1}});
  auto line = find_balanced_halving(inst);
  EXPECT_EQ(line.red, 0u);
  EXPECT_EQ(line.blue, 1u);
}

TEST(FindBalancedHalving, SeededInstances) {
  for (auto [seed, r, b] : {std::tuple{5, 5, 5}, std::tuple{9, 3, 7}}) {
    Instance inst = gen_random(seed, r, b, 100);
    auto line = find_balanced_halving(inst);
    EXPECT_TRUE(enumerate_naive(inst).count(line));
    int right = 0, left = 0;
    for (PointId s = 0; s < inst.size(); ++s) {
      auto o = orientation(inst.pos(line.red), inst.pos(line.blue), inst.pos(s));
      right += o == Orientation::Right;
      left += o == Orientation::Left;
    }
    EXPECT_EQ(right, 4);
    EXPECT_EQ(left, 4);
  }
  try {
    find_balanced_halving(gen_random(1, 2, 2, 100));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenR);
  }
}

TEST(RedBlueLevels, HoldsEverywhere) {
  EXPECT_TRUE(check_lemma_BR(gen_separated_convex(4, 6), 0));
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = random_small(seed);
    if (inst.r() == 0) continue;
    for (int j = 0; j <= inst.r() / 2 && j + inst.delta() <= inst.b() - 1; ++j) {
      EXPECT_TRUE(check_lemma_BR(inst, j)) << "seed " << seed << " j " << j;
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(RedBlueLevels, RejectsOutOfRangeLevels) {
  Instance inst = gen_random(3, 4, 6, 100);
  for (int j : {-1, 3}) {
    try {
      check_lemma_BR(inst, j);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::LevelOutOfRange);
    }
  }
}
