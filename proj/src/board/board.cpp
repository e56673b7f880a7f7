#include "sprouts/board/board.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sprouts::board {

double edge_width(std::size_t game_vertices) {
  return game_vertices <= 40 ? 0.023 - 0.0004 * static_cast<double>(game_vertices) : 0.007;
}

double optimal_length(std::size_t game_vertices) {
  return game_vertices <= 40 ? 0.045 - 0.0008 * static_cast<double>(game_vertices) : 0.013;
}

Board Board::spots(int n) {
  Board b;
  if (n == 1) {
    b.add_vertex({0.5, 0.5}, VertexKind::Game);
    return b;
  }
  for (int k = 0; k < n; ++k) {
    double a = std::numbers::pi / 2 + 2 * std::numbers::pi * k / n;
    b.add_vertex({0.5 + 0.3 * std::cos(a), 0.5 + 0.3 * std::sin(a)}, VertexKind::Game);
  }
  return b;
}

int Board::add_vertex(Point p, VertexKind kind) {
  vertices_.push_back({p, kind, true});
  return static_cast<int>(vertices_.size() - 1);
}

int Board::add_edge(std::vector<int> path) {
  if (path.size() < 2) throw BoardError("edge needs at least two vertices");
  for (std::size_t i = 0; i < path.size(); ++i) {
    bool end = i == 0 || i + 1 == path.size();
    const auto& v = vertex(path[i]);
    if (!v.alive || (v.kind == VertexKind::Game) != end) throw BoardError("edge path must run between game vertices");
  }
  edges_.push_back({std::move(path)});
  return static_cast<int>(edges_.size() - 1);
}

std::vector<int> Board::game_vertices() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].alive && vertices_[v].kind == VertexKind::Game) out.push_back(static_cast<int>(v));
  return out;
}

std::size_t Board::game_vertex_count() const { return game_vertices().size(); }

std::vector<SmallEdge> Board::small_edges() const {
  std::vector<SmallEdge> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& path = edges_[e].path;
    for (std::size_t s = 0; s + 1 < path.size(); ++s)
      out.push_back({path[s], path[s + 1], static_cast<int>(e), static_cast<int>(s)});
  }
  return out;
}

int Board::degree(int v) const {
  if (vertex(v).kind == VertexKind::Inner) return 2;
  int d = 0;
  for (const auto& e : edges_) d += (e.path.front() == v) + (e.path.back() == v);
  return d;
}

void Board::remove_vertex(int v) {
  for (const auto& e : edges_)
    for (int u : e.path)
      if (u == v) throw BoardError("vertex is still used by an edge");
  vertices_.at(static_cast<std::size_t>(v)).alive = false;
}

void Board::remove_inner_vertex(int edge, int index) {
  auto& path = edges_.at(static_cast<std::size_t>(edge)).path;
  if (index <= 0 || index + 1 >= static_cast<int>(path.size())) throw BoardError("not an inner vertex of the edge");
  vertices_.at(static_cast<std::size_t>(path[static_cast<std::size_t>(index)])).alive = false;
  path.erase(path.begin() + index);
}

int Board::split_small_edge(int edge, int seg, Point p) {
  int v = add_vertex(p, VertexKind::Inner);
  auto& path = edges_.at(static_cast<std::size_t>(edge)).path;
  path.insert(path.begin() + seg + 1, v);
  return v;
}

bool operator==(const Board& a, const Board& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    const auto &x = a.vertices_[i], &y = b.vertices_[i];
    if (x.p != y.p || x.kind != y.kind || x.alive != y.alive) return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i)
    if (a.edges_[i].path != b.edges_[i].path) return false;
  return true;
}

}

namespace sprouts::board {

std::size_t crossing_count(const Board& board) {
  auto edges = board.small_edges();
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes;
  for (const auto& s : edges) {
    Point a = board.point(s.a), b = board.point(s.b);
    boxes.push_back({std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)});
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return boxes[i].x0 < boxes[j].x0; });
  std::size_t count = 0;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size() && boxes[order[oj]].x0 <= boxes[i].x1; ++oj) {
      std::size_t j = order[oj];
      if (boxes[j].y0 > boxes[i].y1 || boxes[i].y0 > boxes[j].y1) continue;
      const auto &e = edges[i], &f = edges[j];
      Point a = board.point(e.a), b = board.point(e.b), c = board.point(f.a), d = board.point(f.b);
      int shared = -1;
      if (e.a == f.a || e.a == f.b) shared = e.a;
      if (e.b == f.a || e.b == f.b) shared = shared == -1 ? e.b : -2;
      if (shared == -2) {
        // Parallel small edges between the same two vertices.
        if (e.a == f.a && e.b == f.b) ++count;
        else if (geo::orient(a, b, c) == 0 && geo::orient(a, b, d) == 0) ++count;
        continue;
      }
      if (shared >= 0) {
        Point s = board.point(shared);
        Point x = shared == e.a ? b : a, y = shared == f.a ? d : c;
        if (geo::same_direction(s, x, y)) ++count;
        continue;
      }
      if (geo::segments_intersect(a, b, c, d)) ++count;
    }
  }
  return count;
}

std::vector<std::string> check_board(const Board& board) {
  std::vector<std::string> problems;
  for (std::size_t v = 0; v < board.vertices().size(); ++v) {
    const auto& bv = board.vertices()[v];
    if (!bv.alive) continue;
    if (!(bv.p.x >= 0 && bv.p.x <= 1 && bv.p.y >= 0 && bv.p.y <= 1))
      problems.push_back("vertex " + std::to_string(v) + " outside the unit square");
    if (bv.kind == VertexKind::Game && board.degree(static_cast<int>(v)) > 3)
      problems.push_back("vertex " + std::to_string(v) + " has more than three edge ends");
  }
  std::vector<int> uses(board.vertices().size(), 0);
  for (const auto& e : board.edges())
    for (std::size_t i = 1; i + 1 < e.path.size(); ++i) ++uses[static_cast<std::size_t>(e.path[i])];
  for (std::size_t v = 0; v < uses.size(); ++v)
    if (board.vertices()[v].alive && board.vertices()[v].kind == VertexKind::Inner && uses[v] != 1)
      problems.push_back("inner vertex " + std::to_string(v) + " is not on exactly one edge");
  for (int v : board.game_vertices())
    for (int u : board.game_vertices())
      if (u < v && board.point(u) == board.point(v)) problems.push_back("coincident spots");
  if (auto c = crossing_count(board)) problems.push_back(std::to_string(c) + " crossing small-edge pairs");
  return problems;
}

}
