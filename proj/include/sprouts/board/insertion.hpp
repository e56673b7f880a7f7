#pragma once

#include <string>
#include <vector>

#include "sprouts/board/topology.hpp"

namespace sprouts::board {

enum class StrokeError { Crossing, SelfIntersection, DeadEndpoint, DifferentRegions, TooShort, NoEndpoint };

const char* to_string(StrokeError e);

class StrokeRejected : public BoardError {
public:
  StrokeRejected(StrokeError code, const std::string& detail)
      : BoardError(std::string(to_string(code)) + ": " + detail), code_(code) {}
  StrokeError code() const { return code_; }

private:
  StrokeError code_;
};

// A polyline accepted for insertion, with the corners it leaves from.
struct ValidatedMove {
  std::vector<Point> path;  // path.front() is `from`, path.back() is `to`
  int from = -1;
  int to = -1;
  Topology::CornerRef from_corner;
  Topology::CornerRef to_corner;
  int face = -1;
  bool single_boundary = false;
};

// Checks an exact polyline between two game vertices. `touch` is the minimum
// clearance to small edges and spots not incident to the endpoints.
ValidatedMove validate_path(const Board& board, const Topology& topo, std::vector<Point> path, int from, int to,
                            double touch);

// Freehand input: endpoints snap to spots within twice the edge width, the
// stroke is resampled to the optimal small-edge length, touching means
// coming closer than half the edge width.
ValidatedMove validate_stroke(const Board& board, const Topology& topo, const std::vector<Point>& stroke);

struct InsertResult {
  int new_vertex = -1;
  int first_edge = -1;   // from -> new vertex
  int second_edge = -1;  // new vertex -> to
};

// Adds the edge split at its arc-length midpoint by a new game vertex.
InsertResult insert_move(Board& board, const ValidatedMove& move);

}
