#include "sprouts/autodraw/cdt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sprouts::autodraw {

using geo::orient;

namespace {

bool proper_cross(Point a, Point b, Point c, Point d) {
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

}

Cdt::Cdt() {
  for (Point p : {Point{0, 0}, {1, 0}, {1, 1}, {0, 1}}) {
    points_.push_back(p);
    vertex_tri_.push_back(-1);
  }
  make_tri(0, 1, 2);
  make_tri(0, 2, 3);
}

int Cdt::make_tri(int a, int b, int c) {
  int t = static_cast<int>(tris_.size());
  tris_.push_back({{a, b, c}, true});
  edges_[directed(a, b)] = t;
  edges_[directed(b, c)] = t;
  edges_[directed(c, a)] = t;
  for (int v : {a, b, c}) vertex_tri_[static_cast<std::size_t>(v)] = t;
  return t;
}

void Cdt::kill_tri(int t) {
  auto& tri = tris_[static_cast<std::size_t>(t)];
  tri.alive = false;
  for (int k = 0; k < 3; ++k) {
    auto it = edges_.find(directed(tri.v[static_cast<std::size_t>(k)], tri.v[static_cast<std::size_t>((k + 1) % 3)]));
    if (it != edges_.end() && it->second == t) edges_.erase(it);
  }
}

int Cdt::edge_tri(int a, int b) const {
  auto it = edges_.find(directed(a, b));
  return it == edges_.end() ? -1 : it->second;
}

int Cdt::third(int t, int a, int b) const {
  for (int v : tris_[static_cast<std::size_t>(t)].v)
    if (v != a && v != b) return v;
  throw CdtError("degenerate triangle");
}

// Triangles (u, v, p) and (v, u, q) become (q, v, p) and (u, q, p).
void Cdt::flip(int u, int v) {
  int t1 = edge_tri(u, v), t2 = edge_tri(v, u);
  int p = third(t1, u, v), q = third(t2, v, u);
  kill_tri(t1);
  kill_tri(t2);
  make_tri(q, v, p);
  make_tri(u, q, p);
}

// Each edge (u, v) lies in a triangle (u, v, p).
void Cdt::legalize(std::vector<std::pair<int, int>> stack, int p) {
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    if (constrained(u, v)) continue;
    int t2 = edge_tri(v, u);
    if (t2 < 0 || edge_tri(u, v) < 0) continue;
    int q = third(t2, v, u);
    if (geo::incircle(point(u), point(v), point(p), point(q)) <= 0) continue;
    flip(u, v);
    stack.emplace_back(u, q);
    stack.emplace_back(q, v);
  }
}

int Cdt::locate(Point p) const {
  int t = hint_;
  if (t < 0 || t >= static_cast<int>(tris_.size()) || !tris_[static_cast<std::size_t>(t)].alive) t = -1;
  std::size_t limit = 64 + 4 * static_cast<std::size_t>(std::sqrt(static_cast<double>(tris_.size())));
  for (std::size_t step = 0; t >= 0 && step < limit; ++step) {
    const auto& v = tris_[static_cast<std::size_t>(t)].v;
    int next = -1;
    for (std::size_t k0 = 0; k0 < 3 && next < 0; ++k0) {
      std::size_t k = (k0 + step) % 3;
      int a = v[k], b = v[(k + 1) % 3];
      if (orient(point(a), point(b), p) < 0) {
        next = edge_tri(b, a);
        if (next < 0) throw CdtError("point outside the unit square");
      }
    }
    if (next < 0) return hint_ = t;
    t = next;
  }
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    if (!tris_[i].alive) continue;
    const auto& v = tris_[i].v;
    if (orient(point(v[0]), point(v[1]), p) >= 0 && orient(point(v[1]), point(v[2]), p) >= 0 &&
        orient(point(v[2]), point(v[0]), p) >= 0)
      return hint_ = static_cast<int>(i);
  }
  throw CdtError("point outside the unit square");
}

int Cdt::insert(Point p, bool steiner) {
  int t = locate(p);
  auto v = tris_[static_cast<std::size_t>(t)].v;
  int zero = -1, zeros = 0;
  for (int k = 0; k < 3; ++k)
    if (orient(point(v[static_cast<std::size_t>(k)]), point(v[static_cast<std::size_t>((k + 1) % 3)]), p) == 0) {
      zero = k;
      ++zeros;
    }
  if (zeros > 1) throw CdtError("duplicate point");
  if (zeros == 1) {
    int a = v[static_cast<std::size_t>(zero)], b = v[static_cast<std::size_t>((zero + 1) % 3)], c = third(t, a, b);
    if (constrained(a, b) || (steiner && edge_tri(b, a) < 0)) throw CdtError("point on a constrained edge");
    int id = static_cast<int>(points_.size());
    points_.push_back(p);
    vertex_tri_.push_back(-1);
    int t2 = edge_tri(b, a);
    kill_tri(t);
    make_tri(b, c, id);
    make_tri(c, a, id);
    std::vector<std::pair<int, int>> stack = {{b, c}, {c, a}};
    if (t2 >= 0) {
      int d = third(t2, b, a);
      kill_tri(t2);
      make_tri(a, d, id);
      make_tri(d, b, id);
      stack.emplace_back(a, d);
      stack.emplace_back(d, b);
    }
    legalize(std::move(stack), id);
    return id;
  }
  int id = static_cast<int>(points_.size());
  points_.push_back(p);
  vertex_tri_.push_back(-1);
  kill_tri(t);
  make_tri(v[0], v[1], id);
  make_tri(v[1], v[2], id);
  make_tri(v[2], v[0], id);
  legalize({{v[0], v[1]}, {v[1], v[2]}, {v[2], v[0]}}, id);
  return id;
}

int Cdt::add_point(Point p) {
  if (!(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1)) throw CdtError("point outside the unit square");
  return insert(p, false);
}

void Cdt::add_constraint(int a, int b) {
  if (a == b) throw CdtError("degenerate constraint");
  if (has_edge(a, b)) {
    constraints_.insert(undirected(a, b));
    return;
  }
  Point pa = point(a), pb = point(b);
  // Find the triangle at a whose wedge contains b by rotating around a.
  int start = vertex_tri_[static_cast<std::size_t>(a)];
  int t = start;
  int r = -1, l = -1;
  for (std::size_t guard = 0; guard < tris_.size() + 2; ++guard) {
    const auto& v = tris_[static_cast<std::size_t>(t)].v;
    std::size_t k = static_cast<std::size_t>(std::find(v.begin(), v.end(), a) - v.begin());
    int x = v[(k + 1) % 3], y = v[(k + 2) % 3];
    int ox = orient(pa, point(x), pb), oy = orient(pa, point(y), pb);
    if ((ox == 0 && geo::dot(point(x) - pa, pb - pa) > 0) || (oy == 0 && geo::dot(point(y) - pa, pb - pa) > 0))
      throw CdtError("constraint passes through a vertex");
    if (ox > 0 && oy < 0) {
      r = x;
      l = y;
      break;
    }
    int next = edge_tri(a, y);
    if (next < 0) {
      // Hit the hull: continue clockwise from the start instead.
      int back = start;
      while (true) {
        const auto& w = tris_[static_cast<std::size_t>(back)].v;
        std::size_t j = static_cast<std::size_t>(std::find(w.begin(), w.end(), a) - w.begin());
        int prev = edge_tri(w[(j + 1) % 3], a);
        if (prev < 0) break;
        back = prev;
      }
      next = back;
    }
    t = next;
  }
  if (r < 0) throw CdtError("constraint direction not found");
  std::deque<std::pair<int, int>> crossed;
  while (true) {
    crossed.emplace_back(r, l);
    int t2 = edge_tri(l, r);
    if (t2 < 0) throw CdtError("constraint leaves the square");
    int z = third(t2, l, r);
    if (z == b) break;
    int o = orient(pa, pb, point(z));
    if (o == 0) throw CdtError("constraint passes through a vertex");
    if (o > 0)
      l = z;
    else
      r = z;
  }
  std::vector<std::pair<int, int>> fresh;
  for (std::size_t guard = 0; !crossed.empty(); ++guard) {
    if (guard > 100000) throw CdtError("constraint recovery did not terminate");
    auto [u, v] = crossed.front();
    crossed.pop_front();
    int t1 = edge_tri(u, v), t2 = edge_tri(v, u);
    int p = third(t1, u, v), q = third(t2, v, u);
    if (orient(point(p), point(q), point(u)) * orient(point(p), point(q), point(v)) >= 0) {
      crossed.emplace_back(u, v);
      continue;
    }
    flip(u, v);
    if (proper_cross(point(p), point(q), pa, pb))
      crossed.emplace_back(p, q);
    else
      fresh.emplace_back(p, q);
  }
  constraints_.insert(undirected(a, b));
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [u, v] : fresh) {
      if ((u == a && v == b) || (u == b && v == a) || constrained(u, v)) continue;
      int t1 = edge_tri(u, v), t2 = edge_tri(v, u);
      if (t1 < 0 || t2 < 0) continue;
      int p = third(t1, u, v), q = third(t2, v, u);
      if (geo::incircle(point(u), point(v), point(p), point(q)) > 0) {
        flip(u, v);
        u = p;
        v = q;
        changed = true;
      }
    }
  }
}

std::size_t Cdt::refine(double max_area, std::size_t budget) {
  std::size_t added = 0;
  while (added < budget) {
    std::vector<Point> centroids;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      Point a = point(t.v[0]), b = point(t.v[1]), c = point(t.v[2]);
      if (std::abs(geo::cross(b - a, c - a)) / 2 > max_area) centroids.push_back((a + b + c) * (1.0 / 3));
    }
    if (centroids.empty()) break;
    for (Point c : centroids) {
      if (added >= budget) break;
      try {
        insert(c, true);
        ++added;
      } catch (const CdtError&) {
      }
    }
  }
  return added;
}

std::vector<std::array<int, 3>> Cdt::triangles() const {
  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris_)
    if (t.alive) out.push_back(t.v);
  return out;
}

}
