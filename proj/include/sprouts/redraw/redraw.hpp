#pragma once

#include <array>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sprouts/board/board.hpp"

namespace sprouts::redraw {

using geo::Point;

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ForceConfig {
  double w = 0;
  double l_opt = 0;
  double l_mer = 0;
  double l_sub = 0;
  double delta = 0;
  double gamma = 0;
  double m_max = 0;
};

// Keys: w, l_opt, l_mer, l_sub, delta, gamma, M_max. Derived constants
// follow overridden w and l_opt unless overridden themselves.
using ConfigOverrides = std::map<std::string, double>;

ForceConfig make_config(std::size_t game_vertices, const ConfigOverrides& overrides = {});

struct RedrawOptions {
  ConfigOverrides overrides;
  int iterations = 30;
  std::chrono::milliseconds time_limit{50};  // 0 = unlimited
  bool use_index = true;
  // When non-empty, only the inner vertices of these edges and the game
  // vertices whose edges all belong to them move.
  std::vector<int> only_edges;
};

// JSON object with ForceConfig keys plus "iterations" and "time_limit_ms".
RedrawOptions parse_options(const nlohmann::json& j);
RedrawOptions load_options(const std::filesystem::path& path);

// F^a(u, v): pulls v towards u.
Point attraction(Point u, Point v, double delta);
// F^r(u, v): pushes v away from u; zero from distance beta on.
Point repulsion(Point u, Point v, double beta);
// F^e(v, ab): pushes v away from the line of ab when its projection lies on
// ab closer than gamma.
Point edge_repulsion(Point v, Point a, Point b, double gamma);

// Eight 45 degree sectors, sector i starting at angle i * 45 degrees.
struct Zone {
  std::array<double, 8> r{};

  static int sector(Point dir);
  double radius(Point dir) const { return r[static_cast<std::size_t>(sector(dir))]; }
  // Limits movement so that its component along unit u stays below `bound`.
  void limit(Point u, double bound);
};

// Game edges bordering the outer region.
std::vector<bool> outer_edges(const board::Board& board);

class ForceField {
public:
  ForceField(const board::Board& board, const ForceConfig& cfg, bool use_index = true);
  ForceField(const board::Board& board, const ForceConfig& cfg, bool use_index, std::vector<bool> outer);

  double beta(int u, int v) const;
  Point force(int v) const;
  // One zone per vertex id; removed vertices get empty zones.
  std::vector<Zone> zones() const;

private:
  bool co_edge(int u, int v) const;
  Point offset(int u, int v) const;

  const board::Board& board_;
  ForceConfig cfg_;
  bool use_index_;
  std::vector<board::SmallEdge> small_;
  std::vector<std::vector<int>> vertex_edges_;  // game edges through each vertex, sorted
  std::vector<std::vector<int>> incident_;  // small edges at each vertex
  std::vector<bool> outer_edge_;
  std::vector<int> alive_;
  class Index;
  std::shared_ptr<const Index> index_;
};

struct MergeStats {
  std::size_t merged = 0;
  std::size_t subdivided = 0;
};

MergeStats merge_and_subdivide(board::Board& board, const ForceConfig& cfg, const std::vector<int>& only_edges = {});

struct RedrawReport {
  int iterations = 0;
  bool timed_out = false;
  double max_displacement = 0;
};

RedrawReport iterate(board::Board& board, const RedrawOptions& options = {});

}
