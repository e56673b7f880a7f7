#pragma once

#include <array>
#include <map>
#include <vector>

#include "json.hpp"
#include "sprouts/autodraw/cdt.hpp"
#include "sprouts/board/topology.hpp"

namespace sprouts::autodraw {

using board::Topology;
using CornerRef = Topology::CornerRef;

struct MeshOptions {
  double max_area = 1.0 / 128;
  std::size_t steiner_budget = 600;
};

// Constrained triangulation of the whole board with every small edge as a
// constraint. Each triangle knows its face and, at board vertices, the walk
// corner whose wedge contains it.
class Mesh {
public:
  Mesh(const board::Board& board, const Topology& topo, MeshOptions options = {});

  const Cdt& cdt() const { return cdt_; }
  const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
  std::size_t edge_count() const { return edge_ends_.size(); }

  int face(int t) const { return face_[static_cast<std::size_t>(t)]; }
  // Walk -1 when the triangle corner is not a board vertex.
  CornerRef corner(int t, int k) const { return corner_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]; }
  int board_vertex(int cdt_vertex) const { return board_of_[static_cast<std::size_t>(cdt_vertex)]; }
  int cdt_vertex(int board_vertex) const { return cdt_of_[static_cast<std::size_t>(board_vertex)]; }

  // Edge of triangle t from corner k to corner k + 1.
  int edge(int t, int k) const { return tri_edges_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]; }
  std::pair<int, int> edge_ends(int e) const { return edge_ends_[static_cast<std::size_t>(e)]; }
  bool constrained(int e) const;
  // Triangle on the far side of edge k of t, or -1 on the square's border.
  int neighbour(int t, int k) const;
  // Triangle holding the directed edge a -> b (cdt ids), or -1.
  int triangle_with(int a, int b) const;

  Point point(int cdt_vertex) const { return cdt_.point(cdt_vertex); }
  Point centroid(int t) const;
  Point midpoint(int e) const;

  nlohmann::json to_json() const;

private:
  Cdt cdt_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::pair<int, int>> edge_ends_;
  std::map<std::pair<int, int>, int> directed_;
  std::vector<int> face_;
  std::vector<std::array<CornerRef, 3>> corner_;
  std::vector<int> board_of_;
  std::vector<int> cdt_of_;
};

}
