#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sprouts::solver {

std::string spots_position(int n);

struct TreeCount {
  std::uint64_t positions = 0;  // distinct canonical strings, root and terminals included
  std::vector<std::uint64_t> new_per_depth;
};

// Breadth-first enumeration of every canonical position reachable from the
// n-spot start. The result does not depend on the thread count.
TreeCount count_tree(int spots, unsigned threads = 1);

}
