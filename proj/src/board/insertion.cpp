#include "sprouts/board/insertion.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace sprouts::board {

const char* to_string(StrokeError e) {
  switch (e) {
    case StrokeError::Crossing: return "crossing";
    case StrokeError::SelfIntersection: return "self-intersection";
    case StrokeError::DeadEndpoint: return "dead-endpoint";
    case StrokeError::DifferentRegions: return "endpoints-in-different-regions";
    case StrokeError::TooShort: return "too-short";
    case StrokeError::NoEndpoint: return "no-endpoint";
  }
  return "unknown";
}

namespace {

// Segments p->q and p->r share the endpoint p; they overlap beyond it only
// when they leave p in the same direction.
bool overlap_at(Point p, Point q, Point r) { return geo::same_direction(p, q, r); }

double length(const std::vector<Point>& path) {
  double l = 0;
  for (std::size_t i = 1; i < path.size(); ++i) l += geo::dist(path[i - 1], path[i]);
  return l;
}

std::vector<Point> resample(const std::vector<Point>& raw, double spacing) {
  double total = length(raw);
  auto segments = static_cast<std::size_t>(std::max(2.0, std::round(total / spacing)));
  std::vector<Point> out{raw.front()};
  double step = total / static_cast<double>(segments);
  std::size_t i = 1;
  double walked = 0;
  for (std::size_t k = 1; k < segments; ++k) {
    double target = step * static_cast<double>(k);
    for (; i + 1 < raw.size() && walked + geo::dist(raw[i - 1], raw[i]) < target; ++i) walked += geo::dist(raw[i - 1], raw[i]);
    double seg = geo::dist(raw[i - 1], raw[i]);
    double t = seg > 0 ? (target - walked) / seg : 0;
    out.push_back(geo::lerp(raw[i - 1], raw[i], std::clamp(t, 0.0, 1.0)));
  }
  out.push_back(raw.back());
  return out;
}

}

ValidatedMove validate_path(const Board& board, const Topology& topo, std::vector<Point> path, int from, int to,
                            double touch) {
  auto reject = [](StrokeError e, const std::string& d) { return StrokeRejected(e, d); };
  if (path.size() < 2) throw reject(StrokeError::TooShort, "a move needs at least one segment");
  if (board.vertex(from).kind != VertexKind::Game || board.vertex(to).kind != VertexKind::Game)
    throw reject(StrokeError::NoEndpoint, "endpoints must be spots");
  path.front() = board.point(from);
  path.back() = board.point(to);
  if (from == to ? board.lives(from) < 2 : board.lives(from) < 1 || board.lives(to) < 1)
    throw reject(StrokeError::DeadEndpoint, "endpoint has too few lives");
  const std::size_t m = path.size() - 1;
  for (std::size_t i = 0; i < m; ++i)
    if (path[i] == path[i + 1]) throw reject(StrokeError::TooShort, "zero-length segment");
  if (from == to && m < 3) throw reject(StrokeError::TooShort, "a loop needs at least three segments");

  for (std::size_t i = 0; i < m; ++i) {
    if (i + 1 < m && overlap_at(path[i + 1], path[i], path[i + 2]))
      throw reject(StrokeError::SelfIntersection, "stroke folds back on itself");
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1 && from == to) {
        if (overlap_at(path[0], path[1], path[m - 1])) throw reject(StrokeError::SelfIntersection, "loop overlaps");
        if (geo::segments_intersect(path[0], path[1], path[m - 1], path[m - 1]) ||
            geo::segments_intersect(path[m - 1], path[m], path[1], path[1]))
          throw reject(StrokeError::SelfIntersection, "loop touches itself");
        continue;
      }
      if (geo::segments_intersect(path[i], path[i + 1], path[j], path[j + 1]))
        throw reject(StrokeError::SelfIntersection, "stroke crosses itself");
    }
  }

  const double snap = 2 * board.width();
  for (const auto& s : board.small_edges()) {
    Point a = board.point(s.a), b = board.point(s.b);
    for (std::size_t i = 0; i < m; ++i) {
      Point p = path[i], q = path[i + 1];
      bool share_p = i == 0 && (s.a == from || s.b == from);
      bool share_q = i + 1 == m && (s.a == to || s.b == to);
      if (share_p && overlap_at(p, q, s.a == from ? b : a)) throw reject(StrokeError::Crossing, "stroke runs along an edge");
      if (share_q && overlap_at(q, p, s.a == to ? b : a)) throw reject(StrokeError::Crossing, "stroke runs along an edge");
      if (share_p || share_q) continue;
      if (geo::segments_intersect(p, q, a, b)) throw reject(StrokeError::Crossing, "stroke crosses an edge");
      if (touch <= 0) continue;
      // Near its own endpoints a stroke is allowed to approach the edges
      // meeting there.
      double len = geo::dist(p, q);
      Point p2 = p, q2 = q;
      if (i == 0) p2 = geo::lerp(p, q, std::min(1.0, snap / len));
      if (i + 1 == m) q2 = geo::lerp(q, p, std::min(1.0, snap / len));
      if (geo::dot(q2 - p2, q - p) <= 0) continue;
      if (geo::segment_distance(p2, q2, a, b) < touch) throw reject(StrokeError::Crossing, "stroke touches an edge");
    }
  }
  for (int v : board.game_vertices()) {
    if (v == from || v == to || board.degree(v) != 0) continue;
    Point c = board.point(v);
    for (std::size_t i = 0; i < m; ++i)
      if (geo::on_segment(c, path[i], path[i + 1]) ||
          (touch > 0 && geo::point_segment_distance(c, path[i], path[i + 1]) < touch))
        throw reject(StrokeError::Crossing, "stroke touches a spot");
  }

  ValidatedMove vm;
  vm.from = from;
  vm.to = to;
  vm.from_corner = topo.corner_towards(from, path[1]);
  vm.to_corner = topo.corner_towards(to, path[m - 1]);
  int f1 = topo.walk(vm.from_corner.walk).face;
  int f2 = topo.walk(vm.to_corner.walk).face;
  if (f1 != f2) throw reject(StrokeError::DifferentRegions, "endpoints lie in different regions");
  vm.face = f1;
  vm.single_boundary = vm.from_corner.walk == vm.to_corner.walk;
  vm.path = std::move(path);
  return vm;
}

ValidatedMove validate_stroke(const Board& board, const Topology& topo, const std::vector<Point>& stroke) {
  if (stroke.size() < 2) throw StrokeRejected(StrokeError::TooShort, "stroke needs two points");
  double w = board.width();
  auto snap = [&](Point p) {
    int best = -1;
    double bd = 2 * w;
    for (int v : board.game_vertices()) {
      double d = geo::dist(p, board.point(v));
      if (d <= bd) {
        bd = d;
        best = v;
      }
    }
    if (best == -1) throw StrokeRejected(StrokeError::NoEndpoint, "stroke does not start and end at spots");
    return best;
  };
  int from = snap(stroke.front()), to = snap(stroke.back());
  std::vector<Point> raw = stroke;
  raw.front() = board.point(from);
  raw.back() = board.point(to);
  if (length(raw) < 2 * w) throw StrokeRejected(StrokeError::TooShort, "stroke is too short");
  auto path = resample(raw, board.optimal());
  if (from == to && path.size() < 4) path = resample(raw, length(raw) / 3);
  return validate_path(board, topo, std::move(path), from, to, w / 2);
}

InsertResult insert_move(Board& board, const ValidatedMove& move) {
  std::vector<Point> pts = move.path;
  double half = length(pts) / 2, walked = 0;
  std::size_t seg = 0;
  while (seg + 2 < pts.size() && walked + geo::dist(pts[seg], pts[seg + 1]) < half) walked += geo::dist(pts[seg], pts[seg + 1]), ++seg;
  double len = geo::dist(pts[seg], pts[seg + 1]);
  Point mid = geo::lerp(pts[seg], pts[seg + 1], std::clamp((half - walked) / len, 0.0, 1.0));
  std::size_t zi;
  if (seg > 0 && mid == pts[seg]) zi = seg;
  else if (seg + 2 < pts.size() && mid == pts[seg + 1]) zi = seg + 1;
  else {
    pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(seg + 1), mid);
    zi = seg + 1;
  }
  std::vector<int> first{move.from}, second;
  for (std::size_t i = 1; i < zi; ++i) first.push_back(board.add_vertex(pts[i], VertexKind::Inner));
  int z = board.add_vertex(pts[zi], VertexKind::Game);
  first.push_back(z);
  second.push_back(z);
  for (std::size_t i = zi + 1; i + 1 < pts.size(); ++i) second.push_back(board.add_vertex(pts[i], VertexKind::Inner));
  second.push_back(move.to);
  InsertResult r;
  r.new_vertex = z;
  r.first_edge = board.add_edge(std::move(first));
  r.second_edge = board.add_edge(std::move(second));
  return r;
}

}
