#include "sprouts/autodraw/route.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace sprouts::autodraw {

namespace {

using board::Board;
using geo::Containment;

// Node ids: triangle centroids 0..T-1, edge midpoints T..T+E-1, then corners.
struct Graph {
  int tri_count = 0;
  std::vector<Point> pos;
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<CornerRef> corner;
  std::map<std::pair<int, int>, int> corner_node;

  bool is_corner(int n) const { return corner[static_cast<std::size_t>(n)].walk >= 0; }

  int node_of(CornerRef c) const {
    auto it = corner_node.find({c.walk, c.index});
    if (it == corner_node.end()) throw RouteError("corner has no triangle");
    return it->second;
  }

  void link(int a, int b) {
    double w = dist(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]);
    adj[static_cast<std::size_t>(a)].push_back({b, w});
    adj[static_cast<std::size_t>(b)].push_back({a, w});
  }
};

Graph build_graph(const Mesh& mesh, const Board& board, int face) {
  Graph g;
  g.tri_count = static_cast<int>(mesh.triangles().size());
  std::size_t base = mesh.triangles().size() + mesh.edge_count();
  g.pos.resize(base);
  g.adj.resize(base);
  g.corner.resize(base);
  for (int t = 0; t < g.tri_count; ++t) {
    if (mesh.face(t) != face) continue;
    g.pos[static_cast<std::size_t>(t)] = mesh.centroid(t);
    for (int k = 0; k < 3; ++k) {
      int e = mesh.edge(t, k);
      if (!mesh.constrained(e) && mesh.neighbour(t, k) >= 0) {
        int m = g.tri_count + e;
        g.pos[static_cast<std::size_t>(m)] = mesh.midpoint(e);
        g.link(t, m);
      }
      CornerRef c = mesh.corner(t, k);
      if (c.walk < 0) continue;
      auto [it, fresh] = g.corner_node.try_emplace({c.walk, c.index}, static_cast<int>(g.pos.size()));
      if (fresh) {
        g.pos.push_back(board.point(mesh.board_vertex(mesh.triangles()[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)])));
        g.adj.emplace_back();
        g.corner.push_back(c);
      }
      g.link(it->second, t);
    }
  }
  return g;
}

struct Search {
  std::vector<double> dist;
  std::vector<int> prev;
};

// Multi-source Dijkstra. Corner nodes are expanded only when they are
// sources. Returns the first settled node accepted by `stop`, or -1.
template <class Stop>
int dijkstra(const Graph& g, const std::vector<int>& sources, Search& s, Stop stop) {
  const double inf = std::numeric_limits<double>::infinity();
  s.dist.assign(g.pos.size(), inf);
  s.prev.assign(g.pos.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::vector<char> source(g.pos.size(), 0);
  for (int n : sources) {
    s.dist[static_cast<std::size_t>(n)] = 0;
    source[static_cast<std::size_t>(n)] = 1;
    queue.push({0.0, n});
  }
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d > s.dist[static_cast<std::size_t>(n)]) continue;
    if (!source[static_cast<std::size_t>(n)]) {
      if (stop(n)) return n;
      if (g.is_corner(n)) continue;
    }
    for (auto [m, w] : g.adj[static_cast<std::size_t>(n)]) {
      double nd = d + w;
      if (nd < s.dist[static_cast<std::size_t>(m)]) {
        s.dist[static_cast<std::size_t>(m)] = nd;
        s.prev[static_cast<std::size_t>(m)] = n;
        queue.push({nd, m});
      }
    }
  }
  return -1;
}

struct Key {
  std::array<int, 4> k;
  auto operator<=>(const Key&) const = default;
};

class LevelSet {
public:
  int node(Key key, Point p) {
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(pos_.size()));
    if (fresh) {
      pos_.push_back(p);
      adj_.emplace_back();
    }
    return it->second;
  }
  int find(Key key) const {
    auto it = ids_.find(key);
    return it == ids_.end() ? -1 : it->second;
  }
  void link(int a, int b) {
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  Point pos(int n) const { return pos_[static_cast<std::size_t>(n)]; }

  // Follows the curve from `start` until it ends or comes back.
  std::vector<int> trace(int start) const {
    std::vector<int> out{start};
    int prev = -1, cur = start;
    for (std::size_t guard = 0; guard <= pos_.size(); ++guard) {
      int next = -1;
      for (int n : adj_[static_cast<std::size_t>(cur)])
        if (n != prev) {
          next = n;
          break;
        }
      if (next < 0 || next == start) return out;
      out.push_back(next);
      prev = cur;
      cur = next;
    }
    throw RouteError("level set does not close");
  }

private:
  std::map<Key, int> ids_;
  std::vector<Point> pos_;
  std::vector<std::vector<int>> adj_;
};

}

Polyline shortest_path(const Mesh& mesh, const Topology& topo, const Board& board, int face, CornerRef from,
                       CornerRef to) {
  (void)topo;
  Graph g = build_graph(mesh, board, face);
  int a = g.node_of(from), b = g.node_of(to);
  Search s;
  if (dijkstra(g, {a}, s, [&](int n) { return n == b; }) < 0) throw RouteError("corners are not connected");
  Polyline out;
  for (int n = b; n >= 0; n = s.prev[static_cast<std::size_t>(n)]) out.push_back(g.pos[static_cast<std::size_t>(n)]);
  std::reverse(out.begin(), out.end());
  return out;
}

Polyline enfold(const Mesh& mesh, const Topology& topo, const Board& board, int face, int beta, int first, int last,
                const std::vector<int>& enfolded, bool reversed) {
  const auto& walk = topo.walk(beta);
  int n = static_cast<int>(walk.corners.size());
  bool singleton = walk.corners[0].in < 0;
  std::vector<std::vector<char>> kc(topo.walks().size());
  std::vector<char> kd(topo.darts().size(), 0);
  auto add_walk = [&](int w) {
    const auto& corners = topo.walk(w).corners;
    kc[static_cast<std::size_t>(w)].assign(corners.size(), 1);
    for (const auto& c : corners)
      if (c.out >= 0) kd[static_cast<std::size_t>(c.out)] = 1;
  };
  kc[static_cast<std::size_t>(beta)].assign(static_cast<std::size_t>(n), 0);
  bool closed = singleton || (reversed && first == last);
  std::vector<int> arc;
  if (closed) {
    add_walk(beta);
    for (int k = 0; k < n; ++k) arc.push_back(k);
  } else {
    int a = reversed ? last : first, b = reversed ? first : last;
    for (int k = a;; k = (k + 1) % n) {
      kc[static_cast<std::size_t>(beta)][static_cast<std::size_t>(k)] = 1;
      arc.push_back(k);
      if (k == b) break;
      kd[static_cast<std::size_t>(walk.corners[static_cast<std::size_t>(k)].out)] = 1;
    }
  }
  for (int w : enfolded) add_walk(w);

  Graph g = build_graph(mesh, board, face);
  std::vector<char> tree(g.pos.size(), 0);
  std::vector<int> sources;
  for (int k : arc) sources.push_back(g.node_of({beta, k}));
  std::set<int> remaining(enfolded.begin(), enfolded.end());
  Search s;
  while (!remaining.empty()) {
    int hit = dijkstra(g, sources, s, [&](int m) {
      return g.is_corner(m) && remaining.contains(g.corner[static_cast<std::size_t>(m)].walk);
    });
    if (hit < 0) throw RouteError("boundary not reachable");
    for (int m = s.prev[static_cast<std::size_t>(hit)]; m >= 0 && s.dist[static_cast<std::size_t>(m)] > 0;
         m = s.prev[static_cast<std::size_t>(m)]) {
      tree[static_cast<std::size_t>(m)] = 1;
      sources.push_back(m);
    }
    int w = g.corner[static_cast<std::size_t>(hit)].walk;
    for (std::size_t k = 0; k < topo.walk(w).corners.size(); ++k) sources.push_back(g.node_of({w, static_cast<int>(k)}));
    remaining.erase(w);
  }

  std::map<std::pair<int, int>, int> dart_of;
  for (std::size_t d = 0; d < topo.darts().size(); ++d)
    dart_of[{topo.darts()[d].from, topo.darts()[d].to}] = static_cast<int>(d);
  const auto& tris = mesh.triangles();
  auto corner_label = [&](int t, int k) {
    CornerRef c = mesh.corner(t, k);
    if (c.walk < 0) return 0;
    const auto& flags = kc[static_cast<std::size_t>(c.walk)];
    return flags.empty() ? 0 : int{flags[static_cast<std::size_t>(c.index)]};
  };
  // Label of the midpoint of edge ke of t.
  auto mid_label = [&](int t, int ke) {
    int e = mesh.edge(t, ke);
    if (mesh.constrained(e)) {
      int a = mesh.board_vertex(tris[static_cast<std::size_t>(t)][static_cast<std::size_t>(ke)]);
      int b = mesh.board_vertex(tris[static_cast<std::size_t>(t)][static_cast<std::size_t>((ke + 1) % 3)]);
      return int{kd[static_cast<std::size_t>(dart_of.at({a, b}))]};
    }
    if (mesh.neighbour(t, ke) < 0) return 0;
    return int{tree[static_cast<std::size_t>(g.tri_count + e)]};
  };
  // Halves of constrained and border edges belong to one side only.
  auto half_key = [&](int t, int ke, int v) {
    int e = mesh.edge(t, ke);
    if (mesh.constrained(e) || mesh.neighbour(t, ke) < 0) return Key{{0, t, v, e}};
    return Key{{1, v, e, 0}};
  };

  LevelSet ls;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    if (mesh.face(t) != face) continue;
    const auto& tv = tris[static_cast<std::size_t>(t)];
    Point c = mesh.centroid(t);
    int lc = tree[static_cast<std::size_t>(t)];
    for (int k = 0; k < 3; ++k) {
      int v = tv[static_cast<std::size_t>(k)];
      int lv = corner_label(t, k);
      Point pv = mesh.point(v);
      for (int ke : {k, (k + 2) % 3}) {
        int e = mesh.edge(t, ke);
        auto [ea, eb] = mesh.edge_ends(e);
        Point pw = mesh.point(ea == v ? eb : ea);
        Point pm = mesh.midpoint(e);
        int lm = mid_label(t, ke);
        std::vector<int> cut;
        if (lv != lm) cut.push_back(ls.node(half_key(t, ke, v), (pv * 3 + pw) * 0.25));
        if (lm != lc) cut.push_back(ls.node(Key{{3, t, e, 0}}, (pm + c) * 0.5));
        if (lv != lc) cut.push_back(ls.node(Key{{2, t, v, 0}}, (pv + c) * 0.5));
        if (cut.size() == 2) ls.link(cut[0], cut[1]);
      }
    }
  }

  auto vertex_point = [&](int corner) { return board.point(walk.corners[static_cast<std::size_t>(corner)].vertex); };
  Polyline out;
  if (closed) {
    int cut_corner = singleton ? 0 : first;
    int start = -1;
    for (int t = 0; t < static_cast<int>(tris.size()) && start < 0; ++t) {
      if (mesh.face(t) != face || tree[static_cast<std::size_t>(t)]) continue;
      for (int k = 0; k < 3; ++k)
        if (mesh.corner(t, k) == CornerRef{beta, cut_corner}) {
          start = ls.find(Key{{2, t, tris[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)], 0}});
          break;
        }
    }
    if (start < 0) throw RouteError("no place to close the curve");
    auto nodes = ls.trace(start);
    Point v = vertex_point(cut_corner);
    out.push_back(v);
    for (std::size_t i = 1; i < nodes.size(); ++i) out.push_back(ls.pos(nodes[i]));
    out.push_back(v);
    return out;
  }

  // Crossing on the half of a dart next to vertex `end` (a board vertex),
  // seen from the face.
  auto wall = [&](int dart, int end) {
    const auto& d = topo.dart(dart);
    int a = mesh.cdt_vertex(d.from), b = mesh.cdt_vertex(d.to);
    int t = mesh.triangle_with(a, b);
    if (t < 0) throw RouteError("dart missing from the triangulation");
    int k = 0;
    while (tris[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] != a) ++k;
    return ls.find(Key{{0, t, mesh.cdt_vertex(end), mesh.edge(t, k)}});
  };
  int a = reversed ? last : first, b = reversed ? first : last;
  const auto& ca = walk.corners[static_cast<std::size_t>(a)];
  const auto& cb = walk.corners[static_cast<std::size_t>(b)];
  int start = wall(ca.in, ca.vertex), stop = wall(cb.out, cb.vertex);
  if (start < 0 || stop < 0) throw RouteError("curve does not meet the arc ends");
  auto nodes = ls.trace(start);
  if (nodes.back() != stop) throw RouteError("curve ends away from the arc");
  out.push_back(board.point(ca.vertex));
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) out.push_back(ls.pos(nodes[i]));
  out.push_back(board.point(cb.vertex));
  if (reversed) std::reverse(out.begin(), out.end());
  return out;
}

Polyline simplify(const Board& board, const Polyline& path, int from, int to, double clearance) {
  if (path.size() < 3) return path;
  struct Seg {
    Point a, b;
    int va, vb;
  };
  std::vector<Seg> edges;
  for (const auto& s : board.small_edges()) edges.push_back({board.point(s.a), board.point(s.b), s.a, s.b});
  std::vector<int> vertices;
  for (std::size_t v = 0; v < board.vertices().size(); ++v)
    if (board.vertices()[v].alive && static_cast<int>(v) != from && static_cast<int>(v) != to)
      vertices.push_back(static_cast<int>(v));
  const std::size_t n = path.size();
  Polyline out{path.front()};

  auto overlaps = [](Point shared, Point p, Point q) { return geo::same_direction(shared, p, q); };
  // Segment pq against chord ab: they may share an end point, nothing more.
  auto meets = [&](Point a, Point b, Point p, Point q) {
    if (p == a || q == a) return overlaps(a, b, p == a ? q : p);
    if (p == b || q == b) return overlaps(b, a, p == b ? q : p);
    return geo::segments_intersect(a, b, p, q);
  };
  auto chord_ok = [&](std::size_t k, std::size_t m) {
    Point a = path[k], b = path[m];
    double x0 = std::min(a.x, b.x) - clearance, x1 = std::max(a.x, b.x) + clearance;
    double y0 = std::min(a.y, b.y) - clearance, y1 = std::max(a.y, b.y) + clearance;
    auto near = [&](Point p, Point q) {
      return std::max(p.x, q.x) >= x0 && std::min(p.x, q.x) <= x1 && std::max(p.y, q.y) >= y0 &&
             std::min(p.y, q.y) <= y1;
    };
    for (const auto& s : edges) {
      if (!near(s.a, s.b)) continue;
      if (meets(a, b, s.a, s.b)) return false;
      bool incident = s.va == from || s.vb == from || s.va == to || s.vb == to;
      if (!incident && geo::segment_distance(a, b, s.a, s.b) < clearance) return false;
    }
    for (int v : vertices) {
      Point p = board.point(v);
      if (near(p, p) && geo::point_segment_distance(p, a, b) < clearance) return false;
      if (geo::on_segment(p, a, b)) return false;
    }
    std::span<const Point> poly(path.data() + k, m - k + 1);
    for (int v : vertices)
      if (geo::point_in_polygon(board.point(v), poly) != Containment::Outside) return false;
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      if (meets(a, b, out[i], out[i + 1])) return false;
    for (std::size_t i = m; i + 1 < n; ++i)
      if (meets(a, b, path[i], path[i + 1])) return false;
    if (out.size() >= 2 && geo::point_in_polygon((out[out.size() - 2] + a) * 0.5, poly) != Containment::Outside)
      return false;
    if (m + 1 < n && geo::point_in_polygon((b + path[m + 1]) * 0.5, poly) != Containment::Outside) return false;
    return true;
  };

  std::size_t k = 0;
  while (k + 1 < n) {
    std::size_t good = k + 1, bad = n;
    for (std::size_t step = 2;; step *= 2) {
      std::size_t m = std::min(k + step, n - 1);
      if (m <= good) break;
      if (chord_ok(k, m)) {
        good = m;
        if (m == n - 1) break;
      } else {
        bad = m;
        break;
      }
    }
    while (bad < n && bad - good > 1) {
      std::size_t m = (good + bad) / 2;
      if (chord_ok(k, m)) good = m;
      else bad = m;
    }
    out.push_back(path[good]);
    k = good;
  }
  return out;
}

Polyline resample(const Polyline& path, double step) {
  Polyline out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    out.push_back(path[i]);
    int parts = static_cast<int>(std::ceil(dist(path[i], path[i + 1]) / step));
    for (int p = 1; p < parts; ++p) out.push_back(lerp(path[i], path[i + 1], static_cast<double>(p) / parts));
  }
  out.push_back(path.back());
  return out;
}

double length(const Polyline& path) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) total += dist(path[i], path[i + 1]);
  return total;
}

}
