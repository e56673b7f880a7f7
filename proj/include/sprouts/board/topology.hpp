#pragma once

#include <cstddef>
#include <vector>

#include "sprouts/board/board.hpp"
#include "sprouts/core/position.hpp"

namespace sprouts::board {

struct Dart {
  int from = -1;
  int to = -1;
  int edge = -1;
  int seg = -1;
  bool forward = true;  // follows the drawing order of the edge
  int twin = -1;
  int next = -1;
  int prev = -1;
  int walk = -1;
};

// A place in a walk: the vertex between the incoming and outgoing dart.
// Isolated vertices have a single corner without darts.
struct Corner {
  int vertex = -1;
  int in = -1;
  int out = -1;
};

// Boundary walk keeping its face on the left: inner boundaries run
// clockwise, border boundaries counterclockwise.
struct Walk {
  std::vector<Corner> corners;
  int component = -1;
  bool outer = false;  // outer walk of its component, bounds the enclosing face
  int face = -1;
  double area = 0;
};

struct Face {
  int border = -1;  // -1 for the outer face
  std::vector<int> walks;  // border first
  int parent = -1;
  std::vector<int> children;
};

class AmbiguousLocation : public BoardError {
public:
  using BoardError::BoardError;
};

class Topology {
public:
  explicit Topology(const Board& board);

  const std::vector<Dart>& darts() const { return darts_; }
  const std::vector<Walk>& walks() const { return walks_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Dart& dart(int d) const { return darts_.at(static_cast<std::size_t>(d)); }
  const Walk& walk(int w) const { return walks_.at(static_cast<std::size_t>(w)); }
  const Face& face(int f) const { return faces_.at(static_cast<std::size_t>(f)); }

  // Outgoing darts of v in counterclockwise order.
  const std::vector<int>& around(int v) const { return around_.at(static_cast<std::size_t>(v)); }

  struct CornerRef {
    int walk = -1;
    int index = -1;
    friend bool operator==(const CornerRef&, const CornerRef&) = default;
  };

  // The corner of v whose wedge contains the ray from v towards p.
  CornerRef corner_towards(int v, Point toward) const;
  bool wedge_contains(const Corner& c, Point toward) const;

  // Deepest face containing p; p within eps of any small edge or vertex is
  // ambiguous.
  int locate(Point p, double eps) const;

  std::vector<Point> polygon(int walk) const;

private:
  const Board* board_;
  std::vector<Dart> darts_;
  std::vector<std::vector<int>> around_;
  std::vector<Walk> walks_;
  std::vector<Face> faces_;
  std::vector<int> vertex_walk_;  // isolated vertices -> walk
};

// Position string view of a board: one land, one region per face, one
// boundary per walk listing the game-vertex corners.
struct Extraction {
  Position position;
  std::vector<int> region_face;  // region -> face
  std::vector<std::vector<int>> boundary_walk;  // region -> boundary -> walk
  // region -> boundary -> occurrence -> corner index in the walk
  std::vector<std::vector<std::vector<int>>> occurrence_corner;
  std::vector<VertexId> vertex_id;  // board vertex -> position vertex (or -1)
};

Extraction extract(const Board& board, const Topology& topo);
Extraction extract(const Board& board);

// Canonical string of the board position.
std::string extract_string(const Board& board);

}
