#include "sprouts/solver/tree.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "sprouts/core/canonize.hpp"
#include "sprouts/core/moves.hpp"

namespace sprouts::solver {

std::string spots_position(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += i ? ".0" : "0";
  return s;
}

TreeCount count_tree(int spots, unsigned threads) {
  threads = std::max(1u, threads);
  TreeCount result;
  std::unordered_set<std::string> seen;
  std::vector<std::string> frontier = {canonical_string(spots_position(spots))};
  seen.insert(frontier[0]);
  result.new_per_depth.push_back(1);
  while (!frontier.empty()) {
    std::vector<std::vector<std::string>> kids(frontier.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next++) < frontier.size();) kids[i] = children_strings(frontier[i]);
    };
    if (threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    std::vector<std::string> next_frontier;
    for (auto& list : kids)
      for (auto& k : list)
        if (seen.insert(k).second) next_frontier.push_back(std::move(k));
    if (!next_frontier.empty()) result.new_per_depth.push_back(next_frontier.size());
    frontier = std::move(next_frontier);
  }
  result.positions = seen.size();
  return result;
}

}
