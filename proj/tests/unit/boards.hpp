#pragma once

// Random valid boards built from random strokes accepted by the validator.

#include <random>

#include "sprouts/board/insertion.hpp"

namespace boards {

inline sprouts::board::Board random_board(int spots, int moves, std::uint64_t seed) {
  using namespace sprouts::board;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.03, 0.97);
  Board b = Board::spots(spots);
  for (int made = 0, tries = 0; made < moves && tries < 400; ++tries) {
    std::vector<int> live;
    for (int v : b.game_vertices())
      if (b.lives(v) > 0) live.push_back(v);
    if (live.empty()) break;
    int from = live[rng() % live.size()], to = live[rng() % live.size()];
    std::vector<Point> stroke = {b.point(from)};
    int bends = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < bends; ++k) stroke.push_back({u(rng), u(rng)});
    stroke.push_back(b.point(to));
    try {
      Topology topo(b);
      insert_move(b, validate_stroke(b, topo, stroke));
      ++made;
    } catch (const StrokeRejected&) {
    }
  }
  return b;
}

}
