#pragma once

#include "json.hpp"
#include "sprouts/board/topology.hpp"

namespace sprouts::board {

// Vertices, edges, boundary walks as edge references with direction flags,
// and the region tree.
nlohmann::json to_json(const Board& board, const Topology& topo);
nlohmann::json to_json(const Board& board);

// Rebuilds a board from vertices and edges; boundaries and regions are
// recomputed. Throws BoardError on malformed input.
Board board_from_json(const nlohmann::json& snapshot);

}
