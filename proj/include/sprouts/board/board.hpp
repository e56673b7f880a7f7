#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprouts/geometry/predicates.hpp"

namespace sprouts::board {

using geo::Point;

enum class VertexKind { Game, Inner };

struct BoardVertex {
  Point p;
  VertexKind kind = VertexKind::Game;
  bool alive = true;
};

// gr(e): game vertex, inner vertices in drawing order, game vertex.
struct GameEdge {
  std::vector<int> path;
};

struct SmallEdge {
  int a = -1;
  int b = -1;
  int edge = -1;
  int seg = -1;  // path[seg] -> path[seg + 1]
};

class BoardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Small-edge width and optimal small-edge length for a board with the given
// number of game vertices.
double edge_width(std::size_t game_vertices);
double optimal_length(std::size_t game_vertices);

class Board {
public:
  // n spots spread on a circle around the centre of the unit square.
  static Board spots(int n);

  int add_vertex(Point p, VertexKind kind);
  int add_edge(std::vector<int> path);

  const std::vector<BoardVertex>& vertices() const { return vertices_; }
  const std::vector<GameEdge>& edges() const { return edges_; }
  const BoardVertex& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  Point point(int v) const { return vertex(v).p; }
  void move_vertex(int v, Point p) { vertices_.at(static_cast<std::size_t>(v)).p = p; }

  std::vector<int> game_vertices() const;
  std::size_t game_vertex_count() const;
  std::vector<SmallEdge> small_edges() const;

  // Incident small-edge ends; a loop counts twice.
  int degree(int v) const;
  int lives(int v) const { return 3 - degree(v); }

  // Marks an unused vertex as removed; ids stay stable.
  void remove_vertex(int v);
  // Removes inner vertex `v` from its edge, joining its two small edges.
  void remove_inner_vertex(int edge, int seg_index);
  // Splits small edge `seg` of `edge` at p; returns the new inner vertex.
  int split_small_edge(int edge, int seg, Point p);

  double width() const { return edge_width(game_vertex_count()); }
  double optimal() const { return optimal_length(game_vertex_count()); }

  friend bool operator==(const Board&, const Board&);

private:
  std::vector<BoardVertex> vertices_;
  std::vector<GameEdge> edges_;
};

// Pairs of small edges meeting anywhere except at a shared endpoint, plus
// game vertices with more than three edge ends and points outside the unit
// square. Empty on a valid board.
std::vector<std::string> check_board(const Board& board);
std::size_t crossing_count(const Board& board);

}
