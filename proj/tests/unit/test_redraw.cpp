#include <gtest/gtest.h>

#include "boards.hpp"
#include "sprouts/board/topology.hpp"
#include "sprouts/redraw/quadtree.hpp"
#include "sprouts/redraw/redraw.hpp"

using namespace sprouts;
using namespace sprouts::redraw;
using board::Board;
using board::VertexKind;

TEST(Config, Constants) {
  auto c10 = make_config(10);
  EXPECT_NEAR(c10.w, 0.019, 1e-12);
  EXPECT_NEAR(c10.l_opt, 0.037, 1e-12);
  EXPECT_DOUBLE_EQ(c10.l_mer, c10.l_opt);
  EXPECT_DOUBLE_EQ(c10.l_sub, 1.8 * c10.l_opt);
  EXPECT_DOUBLE_EQ(c10.delta, c10.l_opt);
  EXPECT_DOUBLE_EQ(c10.gamma, 10 * c10.w);
  EXPECT_DOUBLE_EQ(c10.m_max, 0.01);
  auto c50 = make_config(50);
  EXPECT_NEAR(c50.w, 0.007, 1e-12);
  EXPECT_NEAR(c50.l_opt, 0.013, 1e-12);
}

TEST(Config, Overrides) {
  auto o = parse_options(nlohmann::json::parse(R"({"l_opt": 0.05, "gamma": 0.1, "iterations": 5, "time_limit_ms": 0})"));
  EXPECT_EQ(o.iterations, 5);
  EXPECT_EQ(o.time_limit.count(), 0);
  auto c = make_config(10, o.overrides);
  EXPECT_DOUBLE_EQ(c.l_opt, 0.05);
  EXPECT_DOUBLE_EQ(c.l_sub, 0.09);
  EXPECT_DOUBLE_EQ(c.gamma, 0.1);
  EXPECT_THROW(parse_options(nlohmann::json::parse(R"({"zeta": 1})")), ConfigError);
  EXPECT_THROW(parse_options(nlohmann::json::parse(R"({"w": "wide"})")), ConfigError);
  EXPECT_THROW(parse_options(nlohmann::json::parse("[]")), ConfigError);
}

TEST(Forces, Formulas) {
  double delta = 0.04, d = 0.03;
  Point fa = attraction({0, 0}, {d, 0}, delta);
  EXPECT_LT(fa.x, 0);
  EXPECT_DOUBLE_EQ(geo::norm(fa), d * d / delta);
  EXPECT_EQ(repulsion({0, 0}, {0.1, 0}, 0.1), (Point{0, 0}));
  Point fr = repulsion({0, 0}, {0.05, 0}, 0.1);
  EXPECT_DOUBLE_EQ(fr.x, 4 * 0.05);
  EXPECT_EQ(edge_repulsion({0.5, 0.2}, {0, 0}, {1, 0}, 0.2), (Point{0, 0}));
  EXPECT_EQ(edge_repulsion({1.5, 0.1}, {0, 0}, {1, 0}, 0.2), (Point{0, 0}));
  Point fe = edge_repulsion({0.5, 0.1}, {0, 0}, {1, 0}, 0.2);
  EXPECT_DOUBLE_EQ(fe.x, 0);
  EXPECT_NEAR(fe.y, 0.01, 1e-15);
}

TEST(Forces, IsolatedPairAtGammaFeelsNoEdgeForce) {
  Board b;
  int u = b.add_vertex({0.4, 0.5}, VertexKind::Game);
  auto cfg = make_config(2);
  b.add_vertex({0.4 + cfg.gamma, 0.5}, VertexKind::Game);
  ForceField field(b, cfg);
  // Only the repulsion of the other spot acts (no edges, border far away).
  Point f = field.force(u);
  EXPECT_DOUBLE_EQ(f.y, 0);
  EXPECT_EQ(field.beta(0, 1), 2 * cfg.delta);
}

TEST(Forces, BetaRules) {
  Board b = Board::spots(2);
  b.add_edge({0, b.add_vertex({0.5, 0.5}, VertexKind::Inner), 1});
  auto cfg = make_config(2);
  ForceField field(b, cfg);
  EXPECT_DOUBLE_EQ(field.beta(0, 1), 4 * cfg.delta);
  EXPECT_DOUBLE_EQ(field.beta(0, 2), cfg.delta);
  Board nested = boards::random_board(1, 1, 3);
  ASSERT_EQ(nested.edges().size(), 2u);
  // A loop through the new spot: one edge side faces the outer region.
  ForceField f2(nested, make_config(2));
  auto outer = outer_edges(nested);
  EXPECT_TRUE(outer[0] && outer[1]);
}

TEST(Forces, IndexDoesNotChangeForces) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Board b = boards::random_board(5, 6, seed);
    auto cfg = make_config(b.game_vertex_count());
    ForceField fast(b, cfg, true), slow(b, cfg, false);
    auto za = fast.zones(), zb = slow.zones();
    for (std::size_t v = 0; v < b.vertices().size(); ++v) {
      if (!b.vertices()[v].alive) continue;
      Point fa = fast.force(static_cast<int>(v)), fb = slow.force(static_cast<int>(v));
      EXPECT_EQ(fa.x, fb.x);
      EXPECT_EQ(fa.y, fb.y);
      EXPECT_EQ(za[v].r, zb[v].r);
    }
  }
}

TEST(Zone, LimitsOnlyTowardsTheEdge) {
  Zone z;
  z.r.fill(0.01);
  z.limit({1, 0}, 0.002);
  EXPECT_DOUBLE_EQ(z.radius({1, 0.1}), 0.002 / (1 + 1e-12));
  EXPECT_DOUBLE_EQ(z.radius({-1, 0.1}), 0.01);
  EXPECT_EQ(Zone::sector({1, 1e-9}), 0);
  EXPECT_EQ(Zone::sector({1, -1e-9}), 7);
  // Sector 1 spans 45 to 90 degrees; its nearest direction to +x is 45.
  EXPECT_NEAR(z.r[1], 0.002 / std::cos(std::numbers::pi / 4), 1e-12);
}

TEST(Quadtree, MatchesBruteForce) {
  Quadtree t;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Box> boxes;
  for (int i = 0; i < 500; ++i) {
    double x = u(rng), y = u(rng);
    boxes.push_back({x, y, x + u(rng) * 0.05, y + u(rng) * 0.05});
    t.insert(i, boxes.back());
  }
  for (int q = 0; q < 100; ++q) {
    double x = u(rng), y = u(rng);
    Box box{x, y, x + 0.1, y + 0.1};
    std::vector<int> expected;
    for (int i = 0; i < 500; ++i)
      if (boxes[static_cast<std::size_t>(i)].intersects(box)) expected.push_back(i);
    EXPECT_EQ(t.query(box), expected);
  }
}

TEST(Merge, CollinearShortPairMerges) {
  Board b;
  int a = b.add_vertex({0.4, 0.5}, VertexKind::Game);
  int m = b.add_vertex({0.41, 0.5}, VertexKind::Inner);
  int c = b.add_vertex({0.42, 0.5}, VertexKind::Game);
  b.add_edge({a, m, c});
  auto stats = merge_and_subdivide(b, make_config(2));
  EXPECT_EQ(stats.merged, 1u);
  EXPECT_EQ(b.edges()[0].path, (std::vector<int>{a, c}));
  EXPECT_FALSE(b.vertex(m).alive);
}

TEST(Merge, OccupiedTriangleBlocks) {
  Board b;
  int a = b.add_vertex({0.40, 0.5}, VertexKind::Game);
  int m = b.add_vertex({0.41, 0.52}, VertexKind::Inner);
  int c = b.add_vertex({0.42, 0.5}, VertexKind::Game);
  b.add_vertex({0.41, 0.505}, VertexKind::Game);
  b.add_edge({a, m, c});
  EXPECT_EQ(merge_and_subdivide(b, make_config(3)).merged, 0u);
}

TEST(Merge, LongEdgeSplitsInHalf) {
  Board b;
  auto cfg = make_config(2);
  int a = b.add_vertex({0.2, 0.5}, VertexKind::Game);
  int c = b.add_vertex({0.2 + 2 * cfg.l_sub, 0.5}, VertexKind::Game);
  b.add_edge({a, c});
  EXPECT_EQ(merge_and_subdivide(b, cfg).subdivided, 1u);
  const auto& path = b.edges()[0].path;
  ASSERT_EQ(path.size(), 3u);
  EXPECT_NEAR(geo::dist(b.point(path[0]), b.point(path[1])), cfg.l_sub, 1e-12);
  EXPECT_NEAR(geo::dist(b.point(path[1]), b.point(path[2])), cfg.l_sub, 1e-12);
}

TEST(Iterate, PreservesEmbedding) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Board b = boards::random_board(2 + static_cast<int>(seed % 4), 8, seed);
    ASSERT_EQ(board::crossing_count(b), 0u);
    auto before = board::extract_string(b);
    RedrawOptions o;
    o.time_limit = std::chrono::milliseconds(0);
    for (int it = 0; it < 30; ++it) {
      o.iterations = 1;
      auto report = iterate(b, o);
      EXPECT_LE(report.max_displacement, 0.01 + 1e-12);
      ASSERT_EQ(board::crossing_count(b), 0u) << seed << " " << it;
      ASSERT_EQ(board::extract_string(b), before) << seed << " " << it;
      for (const auto& v : b.vertices())
        if (v.alive) {
          EXPECT_TRUE(v.p.x >= 0 && v.p.x <= 1 && v.p.y >= 0 && v.p.y <= 1);
        }
    }
  }
}

TEST(Iterate, OnlyEdgesKeepsTheRestFixed) {
  Board b = boards::random_board(3, 3, 7);
  Board copy = b;
  RedrawOptions o;
  o.only_edges = {static_cast<int>(b.edges().size()) - 1};
  o.time_limit = std::chrono::milliseconds(0);
  iterate(b, o);
  for (std::size_t v = 0; v < copy.vertices().size(); ++v) {
    bool on_edge = false;
    for (int x : b.edges().back().path) on_edge |= x == static_cast<int>(v);
    bool kept = copy.vertices()[v].alive && b.vertices()[v].alive;
    if (!on_edge && kept) {
      EXPECT_EQ(b.point(static_cast<int>(v)), copy.point(static_cast<int>(v)));
    }
  }
}

TEST(Iterate, TimeLimitStopsEarly) {
  Board b = boards::random_board(5, 8, 9);
  RedrawOptions o;
  o.iterations = 1000000;
  o.time_limit = std::chrono::milliseconds(20);
  auto r = iterate(b, o);
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(r.iterations, 1000000);
}
