#include "sprouts/redraw/quadtree.hpp"

#include <algorithm>

namespace sprouts::redraw {

namespace {

constexpr std::size_t kLeafCapacity = 8;
constexpr int kMaxDepth = 10;

}

Quadtree::Quadtree(Box bounds) { nodes_.push_back({bounds, 0, -1, {}}); }

int Quadtree::child_for(int node, const Box& box) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  if (n.child < 0) return -1;
  for (int k = 0; k < 4; ++k)
    if (nodes_[static_cast<std::size_t>(n.child + k)].box.contains(box)) return n.child + k;
  return -1;
}

void Quadtree::split(int node) {
  Box b = nodes_[static_cast<std::size_t>(node)].box;
  int depth = nodes_[static_cast<std::size_t>(node)].depth + 1;
  double mx = (b.x0 + b.x1) / 2, my = (b.y0 + b.y1) / 2;
  int first = static_cast<int>(nodes_.size());
  nodes_.push_back({{b.x0, b.y0, mx, my}, depth, -1, {}});
  nodes_.push_back({{mx, b.y0, b.x1, my}, depth, -1, {}});
  nodes_.push_back({{b.x0, my, mx, b.y1}, depth, -1, {}});
  nodes_.push_back({{mx, my, b.x1, b.y1}, depth, -1, {}});
  nodes_[static_cast<std::size_t>(node)].child = first;
  auto items = std::move(nodes_[static_cast<std::size_t>(node)].items);
  nodes_[static_cast<std::size_t>(node)].items.clear();
  for (auto& it : items) {
    int c = child_for(node, it.box);
    nodes_[static_cast<std::size_t>(c < 0 ? node : c)].items.push_back(it);
  }
}

void Quadtree::insert(int id, const Box& box) {
  int node = 0;
  while (true) {
    int c = child_for(node, box);
    if (c < 0) break;
    node = c;
  }
  Node& n = nodes_[static_cast<std::size_t>(node)];
  n.items.push_back({id, box});
  ++count_;
  if (n.child < 0 && n.items.size() > kLeafCapacity && n.depth < kMaxDepth) split(node);
}

std::vector<int> Quadtree::query(const Box& box) const {
  std::vector<int> out;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    const Node& n = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (!n.box.intersects(box) && &n != &nodes_[0]) continue;
    for (const auto& it : n.items)
      if (it.box.intersects(box)) out.push_back(it.id);
    if (n.child >= 0)
      for (int k = 0; k < 4; ++k) stack.push_back(n.child + k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}
