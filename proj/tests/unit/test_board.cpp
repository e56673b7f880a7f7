#include <gtest/gtest.h>

#include <random>

#include "sprouts/board/insertion.hpp"
#include "sprouts/board/snapshot.hpp"
#include "sprouts/core/canonize.hpp"
#include "sprouts/core/moves.hpp"

using namespace sprouts;
using namespace sprouts::board;
using geo::Point;

namespace {

InsertResult draw(Board& b, int from, int to, std::vector<Point> inner) {
  Topology topo(b);
  std::vector<Point> path{b.point(from)};
  path.insert(path.end(), inner.begin(), inner.end());
  path.push_back(b.point(to));
  return insert_move(b, validate_path(b, topo, path, from, to, 0));
}

// Move descriptor of a validated single-land path, with the region's other
// boundaries all on the major side.
MoveDescriptor descriptor(const Extraction& ex, const ValidatedMove& vm) {
  MoveDescriptor m;
  std::size_t region = 0;
  while (ex.region_face[region] != vm.face) ++region;
  m.region = region;
  auto occurrence = [&](Topology::CornerRef c) {
    const auto& walks = ex.boundary_walk[region];
    std::size_t b = static_cast<std::size_t>(std::find(walks.begin(), walks.end(), c.walk) - walks.begin());
    const auto& occ = ex.occurrence_corner[region][b];
    return Occurrence{b, static_cast<std::size_t>(std::find(occ.begin(), occ.end(), c.index) - occ.begin())};
  };
  m.from = occurrence(vm.from_corner);
  m.to = occurrence(vm.to_corner);
  m.kind = vm.single_boundary ? MoveKind::SingleBoundary : MoveKind::DoubleBoundary;
  if (m.kind == MoveKind::SingleBoundary && m.to.index < m.from.index) std::swap(m.from, m.to);
  return m;
}

Board path_fixture() {
  // Vertex sequence ABCDEFGEDCB on the outside of a path with a triangle.
  Board b;
  for (Point p : {Point{0.1, 0.5}, {0.2, 0.5}, {0.3, 0.5}, {0.4, 0.5}, {0.5, 0.5}, {0.6, 0.6}, {0.6, 0.4}})
    b.add_vertex(p, VertexKind::Game);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}}) b.add_edge({u, v});
  return b;
}

}

TEST(Predicates, ExactOrientation) {
  EXPECT_EQ(geo::orient({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(geo::orient({0, 0}, {1, 1}, {2, 2}), 0);
  // Nearly collinear points where naive evaluation is unreliable.
  Point a{0.5, 0.5}, b{12, 12}, c{24, 24};
  EXPECT_EQ(geo::orient(a, b, c), 0);
  Point d{0.5 + 1e-16 * 0, 0.50000000000000011};
  EXPECT_EQ(geo::orient(a, b, d), 1);
  EXPECT_EQ(geo::incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}), 0);
  EXPECT_EQ(geo::incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}), 1);
  EXPECT_EQ(geo::incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}), -1);
}

TEST(Predicates, SweepAndPolygon) {
  Point c{0, 0};
  EXPECT_TRUE(geo::in_ccw_sweep(c, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_FALSE(geo::in_ccw_sweep(c, {0, 1}, {1, 0}, {1, 1}));
  EXPECT_TRUE(geo::in_ccw_sweep(c, {1, 0}, {1, 0}, {-1, 0}));
  EXPECT_FALSE(geo::in_ccw_sweep(c, {1, 0}, {1, 0}, {2, 0}));
  std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_EQ(geo::point_in_polygon({0.5, 0.5}, square), geo::Containment::Inside);
  EXPECT_EQ(geo::point_in_polygon({1, 0.5}, square), geo::Containment::OnBoundary);
  EXPECT_EQ(geo::point_in_polygon({1.5, 0.5}, square), geo::Containment::Outside);
  EXPECT_DOUBLE_EQ(geo::signed_area(square), 1.0);
}

TEST(Extract, FreshBoards) {
  EXPECT_EQ(extract_string(Board::spots(2)), "0.0");
  EXPECT_EQ(extract_string(Board::spots(1)), "0");
  EXPECT_EQ(extract_string(Board::spots(5)), canonical_string("0.0.0.0.0"));
}

TEST(Extract, LoopOnSingleton) {
  Board b = Board::spots(1);
  draw(b, 0, 0, {{0.7, 0.5}, {0.7, 0.7}, {0.5, 0.7}});
  EXPECT_EQ(extract_string(b), "AB|AB");
  Topology topo(b);
  EXPECT_EQ(topo.faces().size(), 2u);
  EXPECT_EQ(topo.locate({0.1, 0.1}, 1e-9), 0);
  int inner = topo.locate({0.6, 0.6}, 1e-9);
  EXPECT_NE(inner, 0);
  EXPECT_EQ(topo.face(inner).parent, 0);
  EXPECT_THROW(topo.locate({0.7, 0.6}, 1e-9), AmbiguousLocation);
  for (const auto& w : topo.walks()) EXPECT_EQ(w.outer, w.area <= 0);
}

TEST(Insert, DoubleBoundaryMatchesStringMove) {
  Board b = Board::spots(2);
  Topology topo(b);
  auto ex = extract(b, topo);
  auto vm = validate_path(b, topo, {b.point(0), {0.5, 0.5}, b.point(1)}, 0, 1, 0);
  EXPECT_FALSE(vm.single_boundary);
  auto m = descriptor(ex, vm);
  std::size_t before = topo.face(vm.face).walks.size();
  insert_move(b, vm);
  EXPECT_EQ(extract_string(b), canonical_string(apply_move(ex.position, m)));
  EXPECT_EQ(extract_string(b), "1a1a");
  Topology after(b);
  EXPECT_EQ(after.face(0).walks.size(), before - 1);
}

TEST(Insert, SingleBoundaryRegionsSplit) {
  Board b = Board::spots(3);
  draw(b, 0, 1, {{0.2, 0.6}});
  Topology topo(b);
  auto ex = extract(b, topo);
  std::size_t before = topo.face(0).walks.size();
  // Loop from spot 0 around spot 2.
  int z = 0;
  auto vm = validate_path(b, topo, {b.point(z), {0.9, 0.9}, {0.95, 0.1}, {0.6, 0.1}, {0.55, 0.5}, b.point(z)}, z, z, 0);
  EXPECT_TRUE(vm.single_boundary);
  insert_move(b, vm);
  Topology after(b);
  ASSERT_EQ(after.faces().size(), 2u);
  EXPECT_EQ(after.face(0).walks.size() + after.face(1).walks.size(), before + 1);
  auto kids = children_strings(canonical_string(ex.position));
  EXPECT_TRUE(std::binary_search(kids.begin(), kids.end(), extract_string(b)));
}

TEST(Insert, OccurrenceDecidesTheMove) {
  Board base = path_fixture();
  Topology topo(base);
  auto ex = extract(base, topo);
  const int C = 2, D = 3;
  std::vector<std::vector<Point>> routes = {
      {base.point(C), {0.3, 0.55}, {0.4, 0.55}, base.point(D)},
      {base.point(C), {0.3, 0.6}, {0.05, 0.6}, {0.05, 0.4}, {0.4, 0.4}, base.point(D)},
  };
  std::vector<std::string> results;
  for (const auto& route : routes) {
    Board b = base;
    auto vm = validate_path(b, topo, route, C, D, 0);
    auto m = descriptor(ex, vm);
    insert_move(b, vm);
    results.push_back(extract_string(b));
    EXPECT_EQ(results.back(), canonical_string(apply_move(ex.position, m)));
  }
  EXPECT_NE(results[0], results[1]);
  // The two routes leave D through different occurrences.
  EXPECT_NE(topo.corner_towards(D, {0.4, 0.55}), topo.corner_towards(D, {0.4, 0.4}));
  // A vertex with one edge end has a single occurrence.
  EXPECT_EQ(topo.corner_towards(0, {0.0, 0.5}), topo.corner_towards(0, {0.1, 0.9}));
}

TEST(Locate, AgreesWithRayCasting) {
  Board b;
  int s = b.add_vertex({0.5, 0.5}, VertexKind::Game);
  int t = b.add_vertex({0.7, 0.7}, VertexKind::Game);
  b.add_vertex({0.2, 0.2}, VertexKind::Game);
  std::vector<Point> loop1{{0.5, 0.5}, {0.9, 0.5}, {0.9, 0.9}, {0.5, 0.9}};
  std::vector<Point> loop2{{0.7, 0.7}, {0.8, 0.7}, {0.8, 0.8}, {0.7, 0.8}};
  int z1 = draw(b, s, s, {loop1[1], loop1[2], loop1[3]}).new_vertex;
  int z2 = draw(b, t, t, {loop2[1], loop2[2], loop2[3]}).new_vertex;
  Topology topo(b);
  auto face_with = [&](int z) {
    for (std::size_t f = 1; f < topo.faces().size(); ++f)
      for (const auto& c : topo.walk(topo.face(static_cast<int>(f)).border).corners)
        if (c.vertex == z) return static_cast<int>(f);
    return -1;
  };
  int f1 = face_with(z1), f2 = face_with(z2);
  ASSERT_NE(f1, -1);
  ASSERT_NE(f2, -1);
  EXPECT_EQ(topo.face(f2).parent, f1);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    Point p{u(rng), u(rng)};
    int expected = 0;
    if (geo::point_in_polygon(p, loop1) == geo::Containment::Inside) expected = f1;
    if (geo::point_in_polygon(p, loop2) == geo::Containment::Inside) expected = f2;
    try {
      EXPECT_EQ(topo.locate(p, 1e-9), expected);
      ++checked;
    } catch (const AmbiguousLocation&) {
    }
  }
  EXPECT_GT(checked, 990);
}

TEST(Stroke, Validation) {
  Board b = Board::spots(2);
  Topology topo(b);
  Point top = b.point(0), bottom = b.point(1);
  auto vm = validate_stroke(b, topo, {top, {0.52, 0.5}, bottom});
  EXPECT_FALSE(vm.single_boundary);
  EXPECT_GE(vm.path.size(), 3u);
  int z = insert_move(b, vm).new_vertex;
  Topology t2(b);
  auto code = [&](const std::vector<Point>& stroke) {
    try {
      validate_stroke(b, t2, stroke);
    } catch (const StrokeRejected& e) {
      return std::string(to_string(e.code()));
    }
    return std::string("accepted");
  };
  // Crossing the new edge from left to right.
  EXPECT_EQ(code({top, {0.3, 0.6}, {0.7, 0.5}, bottom}), "crossing");
  // The middle spot has one life left: no loop there.
  Point mid = b.point(z);
  EXPECT_EQ(code({mid, {0.7, 0.45}, {0.7, 0.55}, mid}), "dead-endpoint");
  EXPECT_EQ(code({top, {0.2, 0.5}, {0.5, 0.99}, {0.2, 0.8}, {0.8, 0.8}, bottom}), "self-intersection");
  EXPECT_EQ(code({top, top + Point{0.01, 0}}), "too-short");
  EXPECT_EQ(code({{0.1, 0.1}, bottom}), "no-endpoint");
  EXPECT_EQ(code({top, {0.2, 0.5}, bottom}), "accepted");
}

TEST(Snapshot, RoundTrip) {
  Board b = path_fixture();
  draw(b, 2, 3, {{0.3, 0.55}, {0.4, 0.55}});
  auto j = to_json(b);
  Board back = board_from_json(j);
  EXPECT_TRUE(back == b);
  EXPECT_EQ(extract_string(back), extract_string(b));
  EXPECT_EQ(j["regions"].size(), Topology(b).faces().size());
  EXPECT_TRUE(j["regions"][0]["border"].is_null());
  auto bad = j;
  bad["edges"][0]["path"] = {0, 99};
  EXPECT_THROW(board_from_json(bad), BoardError);
  EXPECT_THROW(board_from_json(nlohmann::json::parse("{}")), BoardError);
}

TEST(Board, ChecksAndConstants) {
  Board b = Board::spots(2);
  EXPECT_TRUE(check_board(b).empty());
  b.add_edge({0, 1});
  int v = b.add_vertex({0.2, 0.5}, VertexKind::Game);
  int w = b.add_vertex({0.8, 0.5}, VertexKind::Game);
  b.add_edge({v, w});
  EXPECT_EQ(crossing_count(b), 1u);
  EXPECT_NEAR(edge_width(10), 0.019, 1e-12);
  EXPECT_NEAR(optimal_length(10), 0.037, 1e-12);
  EXPECT_NEAR(edge_width(50), 0.007, 1e-12);
  EXPECT_NEAR(optimal_length(50), 0.013, 1e-12);
}
