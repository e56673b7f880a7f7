#include "sprouts/board/topology.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sprouts/core/canonize.hpp"

namespace sprouts::board {

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}

Topology::Topology(const Board& board) : board_(&board) {
  const auto n = board.vertices().size();
  around_.assign(n, {});
  vertex_walk_.assign(n, -1);

  for (const auto& s : board.small_edges()) {
    int d = static_cast<int>(darts_.size());
    darts_.push_back({s.a, s.b, s.edge, s.seg, true, d + 1});
    darts_.push_back({s.b, s.a, s.edge, s.seg, false, d});
    around_[static_cast<std::size_t>(s.a)].push_back(d);
    around_[static_cast<std::size_t>(s.b)].push_back(d + 1);
  }
  std::vector<int> position(darts_.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = around_[v];
    Point c = board.point(static_cast<int>(v));
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return geo::angle_less(c, board.point(darts_[static_cast<std::size_t>(a)].to),
                             board.point(darts_[static_cast<std::size_t>(b)].to));
    });
    for (std::size_t k = 0; k < list.size(); ++k) position[static_cast<std::size_t>(list[k])] = static_cast<int>(k);
  }
  for (auto& d : darts_) {
    const auto& list = around_[static_cast<std::size_t>(d.to)];
    int k = position[static_cast<std::size_t>(d.twin)];
    int deg = static_cast<int>(list.size());
    d.next = list[static_cast<std::size_t>((k - 1 + deg) % deg)];
  }
  for (std::size_t d = 0; d < darts_.size(); ++d) darts_[static_cast<std::size_t>(darts_[d].next)].prev = static_cast<int>(d);

  // Walks, rotated to start at the smallest dart leaving a game vertex.
  for (std::size_t start = 0; start < darts_.size(); ++start) {
    if (darts_[start].walk != -1) continue;
    std::vector<int> cycle;
    int w = static_cast<int>(walks_.size());
    for (int d = static_cast<int>(start);;) {
      darts_[static_cast<std::size_t>(d)].walk = w;
      cycle.push_back(d);
      d = darts_[static_cast<std::size_t>(d)].next;
      if (d == static_cast<int>(start)) break;
    }
    std::size_t first = cycle.size();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (board.vertex(darts_[static_cast<std::size_t>(cycle[k])].from).kind != VertexKind::Game) continue;
      if (first == cycle.size() || cycle[k] < cycle[first]) first = k;
    }
    if (first == cycle.size()) throw BoardError("boundary walk without game vertices");
    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(first), cycle.end());
    Walk walk;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int out = cycle[k];
      int in = cycle[(k + cycle.size() - 1) % cycle.size()];
      walk.corners.push_back({darts_[static_cast<std::size_t>(out)].from, in, out});
    }
    walks_.push_back(std::move(walk));
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& bv = board.vertices()[v];
    if (!bv.alive || bv.kind != VertexKind::Game || !around_[v].empty()) continue;
    vertex_walk_[v] = static_cast<int>(walks_.size());
    Walk walk;
    walk.corners.push_back({static_cast<int>(v), -1, -1});
    walks_.push_back(std::move(walk));
  }

  // Components.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : board.edges())
    for (std::size_t k = 1; k < e.path.size(); ++k) parent[static_cast<std::size_t>(find(parent, e.path[k]))] = find(parent, e.path[0]);
  std::vector<int> comp_of(n, -1), comp_min;
  for (std::size_t v = 0; v < n; ++v) {
    if (!board.vertices()[v].alive) continue;
    if (board.vertices()[v].kind == VertexKind::Inner && around_[v].empty()) continue;
    int root = find(parent, static_cast<int>(v));
    if (comp_of[static_cast<std::size_t>(root)] == -1) {
      comp_of[static_cast<std::size_t>(root)] = static_cast<int>(comp_min.size());
      comp_min.push_back(static_cast<int>(v));
    }
    int c = comp_of[static_cast<std::size_t>(root)];
    comp_of[v] = c;
    if (lex_less(board.point(static_cast<int>(v)), board.point(comp_min[static_cast<std::size_t>(c)])))
      comp_min[static_cast<std::size_t>(c)] = static_cast<int>(v);
  }
  std::vector<int> comp_outer(comp_min.size(), -1);
  for (auto& walk : walks_) walk.component = comp_of[static_cast<std::size_t>(walk.corners[0].vertex)];
  for (std::size_t c = 0; c < comp_min.size(); ++c) {
    int v = comp_min[c];
    if (vertex_walk_[static_cast<std::size_t>(v)] != -1) {
      comp_outer[c] = vertex_walk_[static_cast<std::size_t>(v)];
    } else {
      Point left = board.point(v) - Point{1, 0};
      for (int out : around_[static_cast<std::size_t>(v)]) {
        Corner corner{v, darts_[static_cast<std::size_t>(out)].prev, out};
        if (wedge_contains(corner, left)) {
          comp_outer[c] = darts_[static_cast<std::size_t>(out)].walk;
          break;
        }
      }
    }
    if (comp_outer[c] == -1) throw BoardError("cannot find the outer walk of a component");
    walks_[static_cast<std::size_t>(comp_outer[c])].outer = true;
  }

  // Faces: the outer face, then one per non-outer walk.
  faces_.emplace_back();
  std::vector<std::vector<Point>> polys(walks_.size());
  for (std::size_t w = 0; w < walks_.size(); ++w) {
    polys[w] = polygon(static_cast<int>(w));
    walks_[w].area = geo::signed_area(polys[w]);
    if (walks_[w].outer) continue;
    walks_[w].face = static_cast<int>(faces_.size());
    Face f;
    f.border = static_cast<int>(w);
    f.walks.push_back(static_cast<int>(w));
    faces_.push_back(std::move(f));
  }
  for (std::size_t c = 0; c < comp_min.size(); ++c) {
    Point rep = board.point(comp_min[c]);
    int best = -1;
    for (std::size_t w = 0; w < walks_.size(); ++w) {
      if (walks_[w].outer || walks_[w].component == static_cast<int>(c)) continue;
      auto where = geo::point_in_polygon(rep, polys[w]);
      if (where == geo::Containment::OnBoundary) throw BoardError("components touch");
      if (where == geo::Containment::Inside && (best == -1 || walks_[w].area < walks_[static_cast<std::size_t>(best)].area))
        best = static_cast<int>(w);
    }
    int face = best == -1 ? 0 : walks_[static_cast<std::size_t>(best)].face;
    int outer = comp_outer[c];
    walks_[static_cast<std::size_t>(outer)].face = face;
    faces_[static_cast<std::size_t>(face)].walks.push_back(outer);
  }
  for (std::size_t f = 1; f < faces_.size(); ++f) {
    int comp = walks_[static_cast<std::size_t>(faces_[f].border)].component;
    int p = walks_[static_cast<std::size_t>(comp_outer[static_cast<std::size_t>(comp)])].face;
    faces_[f].parent = p;
    faces_[static_cast<std::size_t>(p)].children.push_back(static_cast<int>(f));
  }
}

bool Topology::wedge_contains(const Corner& c, Point toward) const {
  Point v = board_->point(c.vertex);
  if (toward == v) return false;
  if (c.in == -1) return true;
  Point u = board_->point(darts_[static_cast<std::size_t>(c.in)].from);
  Point w = board_->point(darts_[static_cast<std::size_t>(c.out)].to);
  return geo::in_ccw_sweep(v, w, u, toward);
}

Topology::CornerRef Topology::corner_towards(int v, Point toward) const {
  if (int w = vertex_walk_.at(static_cast<std::size_t>(v)); w != -1) return {w, 0};
  for (int out : around_.at(static_cast<std::size_t>(v))) {
    const auto& d = darts_[static_cast<std::size_t>(out)];
    Corner corner{v, d.prev, out};
    if (!wedge_contains(corner, toward)) continue;
    const auto& corners = walks_[static_cast<std::size_t>(d.walk)].corners;
    for (std::size_t k = 0; k < corners.size(); ++k)
      if (corners[k].out == out) return {d.walk, static_cast<int>(k)};
  }
  throw BoardError("direction runs along an existing edge");
}

int Topology::locate(Point p, double eps) const {
  for (const auto& d : darts_)
    if (d.forward && geo::point_segment_distance(p, board_->point(d.from), board_->point(d.to)) <= eps)
      throw AmbiguousLocation("point lies on an edge");
  for (std::size_t v = 0; v < vertex_walk_.size(); ++v)
    if (vertex_walk_[v] != -1 && geo::dist(p, board_->point(static_cast<int>(v))) <= eps)
      throw AmbiguousLocation("point lies on a spot");
  int best = -1;
  for (std::size_t w = 0; w < walks_.size(); ++w) {
    if (walks_[w].outer) continue;
    auto poly = polygon(static_cast<int>(w));
    if (geo::point_in_polygon(p, poly) == geo::Containment::Inside &&
        (best == -1 || walks_[w].area < walks_[static_cast<std::size_t>(best)].area))
      best = static_cast<int>(w);
  }
  return best == -1 ? 0 : walks_[static_cast<std::size_t>(best)].face;
}

std::vector<Point> Topology::polygon(int walk) const {
  std::vector<Point> out;
  for (const auto& c : walks_.at(static_cast<std::size_t>(walk)).corners) out.push_back(board_->point(c.vertex));
  return out;
}

Extraction extract(const Board& board, const Topology& topo) {
  Extraction ex;
  ex.vertex_id.assign(board.vertices().size(), -1);
  for (int v : board.game_vertices()) ex.vertex_id[static_cast<std::size_t>(v)] = ex.position.add_vertex(board.lives(v), '0');
  Land land;
  for (std::size_t f = 0; f < topo.faces().size(); ++f) {
    const auto& face = topo.faces()[f];
    Region region;
    std::vector<int> walks;
    std::vector<std::vector<int>> occ;
    for (int w : face.walks) {
      Boundary b;
      std::vector<int> corners;
      const auto& cs = topo.walk(w).corners;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        VertexId id = ex.vertex_id[static_cast<std::size_t>(cs[k].vertex)];
        if (id == -1) continue;
        b.push_back(id);
        corners.push_back(static_cast<int>(k));
      }
      region.boundaries.push_back(std::move(b));
      walks.push_back(w);
      occ.push_back(std::move(corners));
    }
    if (region.boundaries.empty()) continue;
    land.regions.push_back(std::move(region));
    ex.region_face.push_back(static_cast<int>(f));
    ex.boundary_walk.push_back(std::move(walks));
    ex.occurrence_corner.push_back(std::move(occ));
  }
  if (!land.regions.empty()) ex.position.lands.push_back(std::move(land));
  return ex;
}

Extraction extract(const Board& board) { return extract(board, Topology(board)); }

std::string extract_string(const Board& board) { return canonical_string(extract(board).position); }

}
