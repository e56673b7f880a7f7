#include "sprouts/core/position.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_set>

namespace sprouts {

VertexId Position::add_vertex(int lives, char name) {
  vertices.push_back({lives, name});
  return static_cast<VertexId>(vertices.size() - 1);
}

PositionError::PositionError(Kind kind, std::size_t offset, char symbol, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset) +
                         (symbol ? std::string(" ('") + symbol + "')" : std::string())),
      kind_(kind), offset_(offset), symbol_(symbol) {}

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit_token(char c) { return c == '0' || c == '1' || c == '2'; }

struct Token {
  char c;
  std::size_t offset;
};

using RawBoundary = std::vector<Token>;
using RawRegion = std::vector<RawBoundary>;
using RawLand = std::vector<RawRegion>;

std::vector<RawLand> tokenize(std::string_view text) {
  std::vector<RawLand> lands;
  if (text.empty()) return lands;
  lands.emplace_back();
  lands.back().emplace_back();
  lands.back().back().emplace_back();
  auto syntax = [](std::size_t at, char c, const char* what) {
    return PositionError(PositionError::Kind::Syntax, at, c, what);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    auto& land = lands.back();
    auto& region = land.back();
    auto& boundary = region.back();
    if (c == '+' || c == '|' || c == '.') {
      if (boundary.empty()) throw syntax(i, c, "empty boundary before separator");
      if (c == '.') region.emplace_back();
      else if (c == '|') land.emplace_back().emplace_back();
      else lands.emplace_back().emplace_back().emplace_back();
    } else if (is_digit_token(c) || is_upper(c) || is_lower(c)) {
      boundary.push_back({c, i});
    } else {
      throw syntax(i, c, "unexpected character");
    }
  }
  if (lands.back().back().back().empty())
    throw syntax(text.size(), '\0', "empty boundary at end of input");
  return lands;
}

}

Position parse_position(std::string_view text) {
  Position p;
  for (const auto& raw_land : tokenize(text)) {
    std::map<char, std::vector<Token>> upper;
    for (const auto& r : raw_land)
      for (const auto& b : r)
        for (const auto& t : b)
          if (is_upper(t.c)) upper[t.c].push_back(t);

    std::map<char, VertexId> upper_ids;
    for (const auto& [c, occ] : upper) {
      if (occ.size() > 3)
        throw PositionError(PositionError::Kind::Invariant, occ[3].offset, c, "letter occurs more than three times");
      bool whole = false;
      if (occ.size() == 1) {
        for (const auto& r : raw_land)
          for (const auto& b : r)
            if (b.size() == 1 && b[0].offset == occ[0].offset) whole = true;
      }
      int lives = whole ? 3 : 3 - static_cast<int>(occ.size());
      upper_ids[c] = p.add_vertex(lives, c);
    }

    Land land;
    for (const auto& raw_region : raw_land) {
      Region region;
      for (const auto& raw_boundary : raw_region) {
        std::array<int, 26> lower_count{};
        for (const auto& t : raw_boundary)
          if (is_lower(t.c)) ++lower_count[t.c - 'a'];
        std::array<VertexId, 26> lower_ids;
        lower_ids.fill(-1);
        Boundary boundary;
        for (const auto& t : raw_boundary) {
          if (t.c == '0') {
            if (raw_boundary.size() != 1)
              throw PositionError(PositionError::Kind::Invariant, t.offset, t.c, "'0' must form a whole boundary");
            boundary.push_back(p.add_vertex(3, '0'));
          } else if (t.c == '1') {
            boundary.push_back(p.add_vertex(2, '1'));
          } else if (t.c == '2') {
            boundary.push_back(p.add_vertex(1, '2'));
          } else if (is_upper(t.c)) {
            boundary.push_back(upper_ids.at(t.c));
          } else {
            int count = lower_count[t.c - 'a'];
            if (count < 2)
              throw PositionError(PositionError::Kind::Invariant, t.offset, t.c,
                                  "lowercase letter must occur at least twice in its boundary");
            if (count > 3)
              throw PositionError(PositionError::Kind::Invariant, t.offset, t.c, "letter occurs more than three times");
            auto& id = lower_ids[t.c - 'a'];
            if (id < 0) id = p.add_vertex(3 - count, t.c);
            boundary.push_back(id);
          }
        }
        region.boundaries.push_back(std::move(boundary));
      }
      land.regions.push_back(std::move(region));
    }
    p.lands.push_back(std::move(land));
  }
  return p;
}

std::string serialize_land(const Position& p, const Land& land) {
  std::string out;
  for (std::size_t r = 0; r < land.regions.size(); ++r) {
    if (r) out += '|';
    const auto& region = land.regions[r];
    for (std::size_t b = 0; b < region.boundaries.size(); ++b) {
      if (b) out += '.';
      for (VertexId v : region.boundaries[b]) out += p.vertex(v).name;
    }
  }
  return out;
}

std::string serialize(const Position& p) {
  std::string out;
  for (std::size_t l = 0; l < p.lands.size(); ++l) {
    if (l) out += '+';
    out += serialize_land(p, p.lands[l]);
  }
  return out;
}

int region_lives(const Position& p, const Region& r) {
  std::unordered_set<VertexId> seen;
  int total = 0;
  for (const auto& b : r.boundaries)
    for (VertexId v : b)
      if (seen.insert(v).second) total += p.lives(v);
  return total;
}

bool region_alive(const Position& p, const Region& r) { return region_lives(p, r) > 1; }

bool has_move(const Position& p) {
  for (const auto& land : p.lands)
    for (const auto& r : land.regions)
      if (region_alive(p, r)) return true;
  return false;
}

std::size_t vertex_count(const Position& p) {
  std::unordered_set<VertexId> seen;
  for (const auto& land : p.lands)
    for (const auto& r : land.regions)
      for (const auto& b : r.boundaries) seen.insert(b.begin(), b.end());
  return seen.size();
}

}
