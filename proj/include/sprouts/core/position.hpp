#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sprouts {

using VertexId = std::int32_t;
using Boundary = std::vector<VertexId>;

struct Region {
  std::vector<Boundary> boundaries;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Land {
  std::vector<Region> regions;
  friend bool operator==(const Land&, const Land&) = default;
};

struct VertexInfo {
  int lives = 3;
  char name = '0';
  friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

// Lands -> regions -> boundaries -> vertex occurrences. Vertex ids index
// `vertices`; a vertex may stay in the table after its occurrences vanish.
struct Position {
  std::vector<Land> lands;
  std::vector<VertexInfo> vertices;

  VertexId add_vertex(int lives, char name);
  const VertexInfo& vertex(VertexId v) const { return vertices.at(static_cast<std::size_t>(v)); }
  VertexInfo& vertex(VertexId v) { return vertices.at(static_cast<std::size_t>(v)); }
  int lives(VertexId v) const { return vertex(v).lives; }
  bool empty() const { return lands.empty(); }

  friend bool operator==(const Position&, const Position&) = default;
};

class PositionError : public std::runtime_error {
public:
  enum class Kind { Syntax, Invariant };

  PositionError(Kind kind, std::size_t offset, char symbol, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }
  char symbol() const { return symbol_; }

private:
  Kind kind_;
  std::size_t offset_;
  char symbol_;
};

Position parse_position(std::string_view text);
std::string serialize(const Position& p);
std::string serialize_land(const Position& p, const Land& land);

// Sum of lives over the distinct vertices of a region.
int region_lives(const Position& p, const Region& r);
bool region_alive(const Position& p, const Region& r);
bool has_move(const Position& p);
std::size_t vertex_count(const Position& p);

}
