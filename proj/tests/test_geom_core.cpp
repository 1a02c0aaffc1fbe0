#include "balanced/generators.hpp"
#include "balanced/instance_io.hpp"

#include <gtest/gtest.h>

using namespace balanced;

namespace {

LabeledPoint pt(Coord x, Coord y, Color c) { return {Rational(x), Rational(y), c, 0}; }
constexpr Color R = Color::Red;
constexpr Color B = Color::Blue;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Orientation, UnitTriangle) {
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}), Orientation::Left);
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {2, 0}), Orientation::Collinear);
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {1, -1}), Orientation::Right);
}

TEST(Orientation, AntisymmetricInLastTwoArguments) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    Vec2 p{detail::draw(rng, -50, 50), detail::draw(rng, -50, 50)};
    Vec2 q{detail::draw(rng, -50, 50), detail::draw(rng, -50, 50)};
    Vec2 s{detail::draw(rng, -50, 50), detail::draw(rng, -50, 50)};
    auto a = orientation(p, q, s);
    auto b = orientation(p, s, q);
    Orientation expected = a == Orientation::Left    ? Orientation::Right
                           : a == Orientation::Right ? Orientation::Left
                                                     : Orientation::Collinear;
    EXPECT_EQ(b, expected);
  }
}

TEST(Direction, CyclicOrderIsExactAndAntipodal) {
  CyclicOrder order;
  std::vector<Direction> ring{{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}};
  for (std::size_t i = 0; i < ring.size(); ++i)
    for (std::size_t j = 0; j < ring.size(); ++j) EXPECT_EQ(order.less(ring[i], ring[j]), i < j) << i << " " << j;
  for (const auto& d : ring) {
    EXPECT_EQ(order.half(d) + order.half(d.antipode()), 1);
    EXPECT_EQ(cross(d, d.antipode()), 0);
  }
  EXPECT_EQ(Direction(4, -6), Direction(2, -3));
  EXPECT_THROW(Direction(0, 0), Error);
}

TEST(Direction, BetweenIsStrictlyInside) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Direction a(detail::draw(rng, -9, 9), detail::draw(rng, -9, 9) | 1);
    Direction b(detail::draw(rng, -9, 9) | 1, detail::draw(rng, -9, 9));
    if (a == b) continue;
    CyclicOrder from_a(a);
    Direction m = direction_between(a, b);
    EXPECT_TRUE(from_a.less(a, m) && from_a.less(m, b)) << a << " " << m << " " << b;
  }
  Direction up(0, 1);
  EXPECT_EQ(direction_between(up, up.antipode()), Direction(-1, 0));
}

TEST(Validate, TwoPoints) {
  Instance inst = validate({pt(0, 0, R), pt(1, 1, B)});
  EXPECT_EQ(inst.r(), 1);
  EXPECT_EQ(inst.b(), 1);
  EXPECT_EQ(inst.delta(), 0);
}

TEST(Validate, CollinearBeatsImbalance) {
  EXPECT_EQ(code_of([] { validate({pt(0, 0, R), pt(1, 0, R), pt(2, 0, B)}); }), ErrorCode::CollinearTriple);
}

TEST(Validate, DiagonalTripleIsCollinear) {
  try {
    validate({pt(0, 0, R), pt(1, 1, B), pt(2, 2, B), pt(3, 0, B)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CollinearTriple);
    EXPECT_EQ(e.points(), (std::vector<PointId>{0, 1, 2}));
  }
  Instance inst = validate({pt(0, 0, R), pt(1, 1, B), pt(2, 3, B), pt(3, 0, B)});
  EXPECT_EQ(inst.r(), 1);
  EXPECT_EQ(inst.b(), 3);
  EXPECT_EQ(inst.delta(), 1);
}

TEST(Validate, RejectsSharedAbscissaAndBadBalance) {
  EXPECT_EQ(code_of([] { validate({pt(0, 0, R), pt(0, 1, B)}); }), ErrorCode::DuplicateAbscissa);
  EXPECT_EQ(code_of([] { validate({pt(0, 0, R), pt(1, 3, R), pt(2, 1, B)}); }), ErrorCode::ColorImbalance);
  EXPECT_EQ(code_of([] { validate({pt(0, 0, B), pt(1, 3, B), pt(2, 1, R)}); }), ErrorCode::ColorImbalance);
  EXPECT_EQ(code_of([] { validate({}); }), ErrorCode::EmptyInstance);
}

TEST(Validate, SwapColorsNormalizesImbalance) {
  std::vector<LabeledPoint> pts{pt(0, 0, R), pt(1, 3, R), pt(2, 1, B), pt(3, 7, R)};
  EXPECT_THROW(validate(pts), Error);
  Instance inst = validate(swap_colors(pts));
  EXPECT_EQ(inst.r(), 1);
  EXPECT_EQ(inst.delta(), 1);
}

TEST(Validate, RationalCoordinatesScaleExactly) {
  std::vector<LabeledPoint> pts{{parse_rational("1/3"), parse_rational("0.5"), R, 0},
                                {parse_rational("2/3"), parse_rational("-1/7"), B, 1},
                                {parse_rational("1"), parse_rational("5/2"), B, 2},
                                {parse_rational("-4"), Rational(0), B, 3}};
  Instance inst = validate(pts);
  EXPECT_EQ(inst.delta(), 1);
  // lcm of denominators is 42.
  EXPECT_EQ(inst.pos(0), (Vec2{14, 21}));
  EXPECT_EQ(inst.pos(1), (Vec2{28, -6}));
}

TEST(HalfplaneWeight, FarVerticalLineSeesEverything) {
  Instance inst = gen_random(5, 2, 6, 50);
  // The leftmost point's vertical line, then every other point is right.
  PointId leftmost = 0;
  for (PointId i = 1; i < inst.size(); ++i)
    if (inst.pos(i).x < inst.pos(leftmost).x) leftmost = i;
  // Pointing up, the right side is x > x_leftmost.
  auto line = DirectedLine::through(inst, leftmost, Direction::vertical());
  EXPECT_EQ(halfplane_weight(line, inst, Side::Right) + inst.weight(leftmost), 2 * inst.delta());
}

TEST(HalfplaneWeight, TwoPointLineHasEmptySides) {
  Instance inst = validate({pt(0, 0, R), pt(1, 1, B)});
  auto line = DirectedLine::spanned_by(inst, 0, 1);
  EXPECT_EQ(halfplane_weight(line, inst, Side::Right), 0);
  EXPECT_EQ(halfplane_weight(line, inst, Side::Left), 0);
}

TEST(HalfplaneWeight, MatchesPerPointOrientationSum) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = gen_random(seed, 3, 7, 60);
    for (PointId a = 0; a < inst.size(); ++a)
      for (PointId b = 0; b < inst.size(); ++b) {
        if (a == b) continue;
        auto line = DirectedLine::spanned_by(inst, a, b);
        int right = 0, left = 0, on = 0;
        for (PointId s = 0; s < inst.size(); ++s) {
          auto o = orientation(inst.pos(a), inst.pos(b), inst.pos(s));
          if (o == Orientation::Right) right += inst.weight(s);
          if (o == Orientation::Left) left += inst.weight(s);
          if (o == Orientation::Collinear) on += inst.weight(s);
        }
        EXPECT_EQ(halfplane_weight(line, inst, Side::Right), right);
        EXPECT_EQ(halfplane_weight(line, inst, Side::Left), left);
        EXPECT_EQ(right + left + on, 2 * inst.delta());
        auto rev = line.reversed();
        for (PointId s = 0; s < inst.size(); ++s) EXPECT_EQ(rev.side(inst.pos(s)), opposite(line.side(inst.pos(s))));
      }
  }
}

TEST(IsBalanced, Basics) {
  Instance two = validate({pt(0, 0, R), pt(1, 1, B)});
  EXPECT_TRUE(is_balanced(0, 1, two));
  Instance blues = validate({pt(0, 0, B), pt(1, 1, B)});
  EXPECT_EQ(code_of([&] { is_balanced(0, 1, blues); }), ErrorCode::SameColorPair);
}

TEST(IsBalanced, SeparatedOctagonHasFour) {
  Instance inst = gen_separated_convex(4, 4);
  int count = 0;
  for (PointId red : inst.ids_of(Color::Red))
    for (PointId blue : inst.ids_of(Color::Blue)) count += is_balanced(red, blue, inst);
  EXPECT_EQ(count, 4);
}

TEST(Generators, RandomIsValidAndDeterministic) {
  Instance a = gen_random(1, 3, 3, 100);
  Instance b = gen_random(1, 3, 3, 100);
  EXPECT_EQ(a.delta(), 0);
  EXPECT_EQ(instance_text(a), instance_text(b));
  Instance c = gen_random(2, 2, 6, 1000);
  EXPECT_EQ(c.delta(), 2);
  EXPECT_EQ(c.size(), 8u);
  EXPECT_NE(instance_text(a), instance_text(gen_random(2, 3, 3, 100)));
}

TEST(Generators, RandomRejectsTinyBoundAndBadCounts) {
  EXPECT_EQ(code_of([] { gen_random(1, 5, 5, 3); }), ErrorCode::BoundTooSmall);
  EXPECT_EQ(code_of([] { gen_random(1, 3, 4, 100); }), ErrorCode::ColorImbalance);
}

TEST(Generators, SeparatedConvexShape) {
  for (int r = 0; r <= 6; ++r)
    for (int b = std::max(r, 1); b <= 10; b += 1) {
      if ((b - r) % 2) continue;
      Instance inst = gen_separated_convex(r, b);
      ASSERT_EQ(inst.r(), r);
      ASSERT_EQ(inst.b(), b);
      // Convex position: every point is a hull vertex, i.e. all other points
      // lie on one side of the line through consecutive points.
      for (PointId i = 0; i + 1 < inst.size(); ++i) {
        auto line = DirectedLine::spanned_by(inst, i, i + 1);
        for (PointId s = 0; s < inst.size(); ++s) {
          if (s == i || s == i + 1) continue;
          EXPECT_EQ(line.side(inst.pos(s)), Side::Left);
        }
      }
      // A vertical line separates the colors.
      for (PointId red : inst.ids_of(Color::Red))
        for (PointId blue : inst.ids_of(Color::Blue)) EXPECT_LT(inst.pos(red).x, inst.pos(blue).x);
    }
  EXPECT_EQ(gen_separated_convex(1, 1).size(), 2u);
}

TEST(InstanceJson, RoundTripsExactly) {
  std::string text = R"({"points":[{"x":"1/3","y":"0.25","color":"R"},{"x":"-2","y":"7/5","color":"B"},{"x":5,"y":"3","color":"B"},{"x":"0.5","y":"-1","color":"B"}]})";
  Instance inst = validate(points_from_json(json::parse(text)));
  EXPECT_EQ(format_rational(inst.point(0).y), "1/4");
  Instance again = validate(points_from_json(to_json(inst)));
  EXPECT_EQ(instance_text(inst), instance_text(again));
  for (PointId i = 0; i < inst.size(); ++i) {
    EXPECT_EQ(inst.point(i).x, again.point(i).x);
    EXPECT_EQ(inst.point(i).y, again.point(i).y);
    EXPECT_EQ(inst.color(i), again.color(i));
  }
}

TEST(InstanceJson, RejectsMalformedInput) {
  EXPECT_THROW(points_from_json(json::parse(R"({"pts":[]})")), Error);
  EXPECT_THROW(points_from_json(json::parse(R"({"points":[{"x":"1/0","y":"1","color":"R"}]})")), std::invalid_argument);
  EXPECT_THROW(points_from_json(json::parse(R"({"points":[{"x":"1","y":"1","color":"G"}]})")), Error);
}
