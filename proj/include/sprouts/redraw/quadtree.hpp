#pragma once

#include <vector>

namespace sprouts::redraw {

struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool contains(const Box& o) const { return x0 <= o.x0 && y0 <= o.y0 && o.x1 <= x1 && o.y1 <= y1; }
  bool intersects(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
  Box grown(double r) const { return {x0 - r, y0 - r, x1 + r, y1 + r}; }
};

// Items live in the deepest node whose box contains them.
class Quadtree {
public:
  explicit Quadtree(Box bounds = {-0.25, -0.25, 1.25, 1.25});

  void insert(int id, const Box& box);
  // Ids of items whose box meets `box`, in increasing order.
  std::vector<int> query(const Box& box) const;
  std::size_t size() const { return count_; }

private:
  struct Item {
    int id;
    Box box;
  };
  struct Node {
    Box box;
    int depth = 0;
    int child = -1;  // first of four children
    std::vector<Item> items;
  };

  void split(int node);
  int child_for(int node, const Box& box) const;

  std::vector<Node> nodes_;
  std::size_t count_ = 0;
};

}
