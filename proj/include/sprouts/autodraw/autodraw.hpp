#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sprouts/autodraw/route.hpp"
#include "sprouts/board/insertion.hpp"
#include "sprouts/core/moves.hpp"
#include "sprouts/redraw/redraw.hpp"

namespace sprouts::autodraw {

class RealizeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Enfolding {
  std::vector<int> walks;
  bool reversed = false;  // close off the complementary arc instead
  friend bool operator==(const Enfolding&, const Enfolding&) = default;
};

// Which side of a single-boundary move to draw around. `border` is the
// border walk of the face, or -1 when the face has none or the border is
// the boundary being joined.
std::vector<Enfolding> choose_enfolding(const std::vector<int>& major, const std::vector<int>& minor, int border);

// Greedy chain from the border through every inner boundary of the face
// except beta and back to the border.
struct Spindle {
  std::vector<int> walks;  // visiting order
  std::vector<std::pair<Point, Point>> segments;
};
Spindle build_spindle(const board::Board& board, const Topology& topo, int face, int beta, int first, int last);

struct AutoDrawOptions {
  MeshOptions mesh;
  bool simplify = true;
  bool redraw = true;
  redraw::RedrawOptions redraw_options{.overrides = {}, .iterations = 10, .time_limit = std::chrono::milliseconds{50}, .use_index = true, .only_edges = {}};
};

struct Realization {
  board::InsertResult inserted;
  std::vector<Point> path;
  MoveDescriptor move;
  std::string position;  // canonical string after the move
};

// Draws move `m` of extract(board).position. The board changes only on
// success.
Realization realize_move(board::Board& board, const MoveDescriptor& m, const AutoDrawOptions& options = {});

// Draws some move whose canonical result is `target`.
Realization realize_child(board::Board& board, const std::string& target, const AutoDrawOptions& options = {});

// Triangulation, spindle, enfolding and chosen path for move `m`.
nlohmann::json debug_dump(const board::Board& board, const MoveDescriptor& m, const AutoDrawOptions& options = {});

}
