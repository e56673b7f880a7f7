#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprouts/core/position.hpp"

namespace sprouts {

enum class MoveKind { DoubleBoundary, SingleBoundary };

struct Occurrence {
  std::size_t boundary = 0;
  std::size_t index = 0;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// For single-boundary moves `from.index <= to.index`; the major region walks
// A_i..A_j Z, the minor one A_1..A_i Z A_j..A_n. `major` lists the other
// boundaries of the region that end up next to the major walk.
struct MoveDescriptor {
  MoveKind kind = MoveKind::DoubleBoundary;
  std::size_t land = 0;
  std::size_t region = 0;
  Occurrence from;
  Occurrence to;
  std::vector<std::size_t> major;
  friend bool operator==(const MoveDescriptor&, const MoveDescriptor&) = default;
};

class IllegalMove : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class PartitionOverflow : public std::length_error {
public:
  using std::length_error::length_error;
};

struct ApplyResult {
  Position position;
  VertexId new_vertex = -1;
  std::size_t major_region = 0;  // index within the land after the move
  std::size_t minor_region = 0;  // equals major_region for double-boundary moves
};

void check_move(const Position& p, const MoveDescriptor& m);
ApplyResult apply_move_ex(const Position& p, const MoveDescriptor& m);
Position apply_move(const Position& p, const MoveDescriptor& m);

struct EnumerateOptions {
  // Boundaries without live vertices are always placed on the minor side.
  bool dead_boundaries_minor = false;
  std::size_t max_subsets = std::size_t{1} << 14;
};

std::vector<MoveDescriptor> enumerate_moves(const Position& p, const EnumerateOptions& options = {});

struct Child {
  MoveDescriptor move;
  std::string canonical;
};

// Distinct canonical children, sorted by canonical string; each keeps the
// first move that produced it.
std::vector<Child> enumerate_children(const Position& p, const EnumerateOptions& options = {});
std::vector<std::string> children_strings(const Position& p);
std::vector<std::string> children_strings(const std::string& canonical);

std::string describe(const MoveDescriptor& m);

}
