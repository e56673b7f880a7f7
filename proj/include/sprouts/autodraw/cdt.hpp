#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sprouts/geometry/predicates.hpp"

namespace sprouts::autodraw {

using geo::Point;

class CdtError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Constrained Delaunay triangulation of the unit square. Vertices 0..3 are
// the square's corners; constrained edges are never split.
class Cdt {
public:
  Cdt();

  // Throws CdtError for duplicates and for points on constrained edges.
  int add_point(Point p);
  // Throws CdtError when the segment passes through another vertex.
  void add_constraint(int a, int b);
  // Inserts centroids of triangles larger than max_area, at most `budget`.
  std::size_t refine(double max_area, std::size_t budget);

  const std::vector<Point>& points() const { return points_; }
  Point point(int v) const { return points_[static_cast<std::size_t>(v)]; }
  // Alive triangles, counterclockwise.
  std::vector<std::array<int, 3>> triangles() const;
  bool constrained(int a, int b) const { return constraints_.count(undirected(a, b)) > 0; }
  bool has_edge(int a, int b) const { return edge_tri(a, b) >= 0 || edge_tri(b, a) >= 0; }

private:
  struct Tri {
    std::array<int, 3> v;
    bool alive = true;
  };

  static std::uint64_t directed(int a, int b) {
    return static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32 | static_cast<std::uint32_t>(b);
  }
  static std::uint64_t undirected(int a, int b) { return a < b ? directed(a, b) : directed(b, a); }

  int make_tri(int a, int b, int c);
  void kill_tri(int t);
  int edge_tri(int a, int b) const;
  int third(int t, int a, int b) const;
  void flip(int u, int v);
  void legalize(std::vector<std::pair<int, int>> edges, int p);
  int locate(Point p) const;
  int insert(Point p, bool steiner);

  std::vector<Point> points_;
  std::vector<Tri> tris_;
  std::vector<int> vertex_tri_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::unordered_set<std::uint64_t> constraints_;
  mutable int hint_ = 0;
};

}
