#include "sprouts/autodraw/mesh.hpp"

#include <deque>

namespace sprouts::autodraw {

Mesh::Mesh(const board::Board& board, const Topology& topo, MeshOptions options) {
  cdt_of_.assign(board.vertices().size(), -1);
  for (std::size_t v = 0; v < board.vertices().size(); ++v)
    if (board.vertices()[v].alive) cdt_of_[v] = cdt_.add_point(board.vertices()[v].p);
  for (const auto& s : board.small_edges())
    cdt_.add_constraint(cdt_of_[static_cast<std::size_t>(s.a)], cdt_of_[static_cast<std::size_t>(s.b)]);
  if (options.steiner_budget) cdt_.refine(options.max_area, options.steiner_budget);

  board_of_.assign(cdt_.points().size(), -1);
  for (std::size_t v = 0; v < cdt_of_.size(); ++v)
    if (cdt_of_[v] >= 0) board_of_[static_cast<std::size_t>(cdt_of_[v])] = static_cast<int>(v);

  tris_ = cdt_.triangles();
  std::map<std::pair<int, int>, int> undirected;
  tri_edges_.resize(tris_.size());
  for (std::size_t t = 0; t < tris_.size(); ++t)
    for (std::size_t k = 0; k < 3; ++k) {
      int a = tris_[t][k], b = tris_[t][(k + 1) % 3];
      directed_[{a, b}] = static_cast<int>(t);
      auto key = std::minmax(a, b);
      auto [it, fresh] = undirected.try_emplace({key.first, key.second}, static_cast<int>(edge_ends_.size()));
      if (fresh) edge_ends_.push_back({key.first, key.second});
      tri_edges_[t][k] = it->second;
    }

  face_.assign(tris_.size(), -1);
  corner_.resize(tris_.size());
  std::deque<int> queue;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    Point c = centroid(static_cast<int>(t));
    for (std::size_t k = 0; k < 3; ++k) {
      int bv = board_of_[static_cast<std::size_t>(tris_[t][k])];
      if (bv < 0) continue;
      corner_[t][k] = topo.corner_towards(bv, c);
      int f = topo.walk(corner_[t][k].walk).face;
      if (face_[t] >= 0 && face_[t] != f) throw CdtError("triangle spans two faces");
      face_[t] = f;
    }
    if (face_[t] >= 0) queue.push_back(static_cast<int>(t));
  }
  if (queue.empty() && !tris_.empty()) {
    face_[0] = 0;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      if (constrained(edge(t, k))) continue;
      int n = neighbour(t, k);
      if (n < 0) continue;
      if (face_[static_cast<std::size_t>(n)] < 0) {
        face_[static_cast<std::size_t>(n)] = face_[static_cast<std::size_t>(t)];
        queue.push_back(n);
      } else if (face_[static_cast<std::size_t>(n)] != face_[static_cast<std::size_t>(t)]) {
        throw CdtError("faces meet across an unconstrained edge");
      }
    }
  }
}

bool Mesh::constrained(int e) const {
  auto [a, b] = edge_ends(e);
  return cdt_.constrained(a, b);
}

int Mesh::neighbour(int t, int k) const {
  const auto& v = tris_[static_cast<std::size_t>(t)];
  return triangle_with(v[static_cast<std::size_t>((k + 1) % 3)], v[static_cast<std::size_t>(k)]);
}

int Mesh::triangle_with(int a, int b) const {
  auto it = directed_.find({a, b});
  return it == directed_.end() ? -1 : it->second;
}

Point Mesh::centroid(int t) const {
  const auto& v = tris_[static_cast<std::size_t>(t)];
  return (point(v[0]) + point(v[1]) + point(v[2])) * (1.0 / 3);
}

Point Mesh::midpoint(int e) const {
  auto [a, b] = edge_ends(e);
  return (point(a) + point(b)) * 0.5;
}

nlohmann::json Mesh::to_json() const {
  nlohmann::json points = nlohmann::json::array(), triangles = nlohmann::json::array();
  for (Point p : cdt_.points()) points.push_back({p.x, p.y});
  for (std::size_t t = 0; t < tris_.size(); ++t)
    triangles.push_back({{"vertices", tris_[t]}, {"face", face_[t]}});
  nlohmann::json constraints = nlohmann::json::array();
  for (std::size_t e = 0; e < edge_ends_.size(); ++e)
    if (constrained(static_cast<int>(e))) constraints.push_back({edge_ends_[e].first, edge_ends_[e].second});
  return {{"points", points}, {"triangles", triangles}, {"constrained", constraints}};
}

}
