#include "sprouts/redraw/redraw.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "sprouts/board/topology.hpp"
#include "sprouts/redraw/quadtree.hpp"

namespace sprouts::redraw {

using board::Board;
using board::VertexKind;

namespace {

constexpr double kCoincident = 1e-9;
constexpr double kJitter = 1e-6;
constexpr double kZoneShare = 0.45;  // below half the gap, from both sides
constexpr double kZoneReach = 2.5;  // in units of M_max

const char* const kConfigKeys[] = {"w", "l_opt", "l_mer", "l_sub", "delta", "gamma", "M_max"};

Box point_box(Point p) { return {p.x, p.y, p.x, p.y}; }

Box segment_box(Point a, Point b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

const std::array<std::pair<Point, Point>, 4> kBorder = {{
    {{0, 0}, {1, 0}},
    {{1, 0}, {1, 1}},
    {{1, 1}, {0, 1}},
    {{0, 1}, {0, 0}},
}};

}

std::vector<bool> outer_edges(const Board& board) {
  std::vector<bool> out(board.edges().size(), false);
  board::Topology topo(board);
  for (const auto& d : topo.darts())
    if (topo.walk(d.walk).face == 0) out[static_cast<std::size_t>(d.edge)] = true;
  return out;
}

namespace {

bool in_closed_triangle(Point p, Point a, Point b, Point c) {
  if (geo::orient(a, b, c) == 0) return geo::on_segment(p, a, b) || geo::on_segment(p, b, c) || geo::on_segment(p, a, c);
  int o1 = geo::orient(a, b, p), o2 = geo::orient(b, c, p), o3 = geo::orient(c, a, p);
  return (o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0);
}

}

ForceConfig make_config(std::size_t game_vertices, const ConfigOverrides& overrides) {
  for (const auto& [key, value] : overrides) {
    if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) == std::end(kConfigKeys))
      throw ConfigError("unknown redraw constant '" + key + "'");
    if (!std::isfinite(value) || value < 0) throw ConfigError("redraw constant '" + key + "' must be non-negative");
  }
  auto pick = [&](const char* key, double fallback) {
    auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
  };
  ForceConfig c;
  c.w = pick("w", board::edge_width(game_vertices));
  c.l_opt = pick("l_opt", board::optimal_length(game_vertices));
  c.l_mer = pick("l_mer", c.l_opt);
  c.l_sub = pick("l_sub", 1.8 * c.l_opt);
  c.delta = pick("delta", c.l_opt);
  c.gamma = pick("gamma", 10 * c.w);
  c.m_max = pick("M_max", 0.01);
  return c;
}

RedrawOptions parse_options(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("redraw config must be a JSON object");
  RedrawOptions o;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw ConfigError("redraw setting '" + key + "' must be a number");
    if (key == "iterations") {
      o.iterations = value.get<int>();
      if (o.iterations < 0) throw ConfigError("iterations must be non-negative");
    } else if (key == "time_limit_ms") {
      o.time_limit = std::chrono::milliseconds(value.get<long>());
    } else {
      o.overrides[key] = value.get<double>();
    }
  }
  make_config(0, o.overrides);
  return o;
}

RedrawOptions load_options(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return parse_options(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Point attraction(Point u, Point v, double delta) { return (geo::norm(u - v) / delta) * (u - v); }

Point repulsion(Point u, Point v, double beta) {
  double d = geo::norm(u - v);
  if (d >= beta || d == 0) return {0, 0};
  double s = beta / d;
  return (s * s) * (v - u);
}

Point edge_repulsion(Point v, Point a, Point b, double gamma) {
  Point ab = b - a;
  double len2 = geo::dot(ab, ab);
  if (len2 == 0) return {0, 0};
  double t = geo::dot(v - a, ab) / len2;
  if (t < 0 || t > 1) return {0, 0};
  Point proj = a + ab * t;
  double d = geo::norm(v - proj);
  if (d >= gamma || d < 1e-15) return {0, 0};
  return ((gamma - d) * (gamma - d) / d) * (v - proj);
}

int Zone::sector(Point dir) {
  double a = std::atan2(dir.y, dir.x);
  if (a < 0) a += 2 * std::numbers::pi;
  int i = static_cast<int>(a / (std::numbers::pi / 4));
  return std::clamp(i, 0, 7);
}

void Zone::limit(Point u, double bound) {
  double phi = std::atan2(u.y, u.x);
  for (int i = 0; i < 8; ++i) {
    double lo = i * std::numbers::pi / 4, hi = lo + std::numbers::pi / 4;
    double rel = std::remainder(phi - lo, 2 * std::numbers::pi);
    double maxcos = rel >= 0 && rel <= std::numbers::pi / 4
                        ? 1.0
                        : std::max(std::cos(phi - lo), std::cos(phi - hi));
    maxcos += 1e-12;
    if (maxcos > 0) r[static_cast<std::size_t>(i)] = std::min(r[static_cast<std::size_t>(i)], bound / maxcos);
  }
}

class ForceField::Index {
public:
  Quadtree vertices;
  Quadtree edges;
};

ForceField::ForceField(const Board& board, const ForceConfig& cfg, bool use_index, std::vector<bool> outer)
    : board_(board), cfg_(cfg), use_index_(use_index), small_(board.small_edges()), outer_edge_(std::move(outer)) {
  std::size_t n = board.vertices().size();
  vertex_edges_.resize(n);
  incident_.resize(n);
  for (std::size_t e = 0; e < board.edges().size(); ++e)
    for (int v : board.edges()[e].path) {
      auto& ve = vertex_edges_[static_cast<std::size_t>(v)];
      if (ve.empty() || ve.back() != static_cast<int>(e)) ve.push_back(static_cast<int>(e));
    }
  for (auto& ve : vertex_edges_) {
    std::sort(ve.begin(), ve.end());
    ve.erase(std::unique(ve.begin(), ve.end()), ve.end());
  }
  for (std::size_t s = 0; s < small_.size(); ++s) {
    incident_[static_cast<std::size_t>(small_[s].a)].push_back(static_cast<int>(s));
    incident_[static_cast<std::size_t>(small_[s].b)].push_back(static_cast<int>(s));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (board.vertices()[v].alive) alive_.push_back(static_cast<int>(v));
  auto index = std::make_shared<Index>();
  for (int v : alive_) index->vertices.insert(v, point_box(board.point(v)));
  for (std::size_t s = 0; s < small_.size(); ++s)
    index->edges.insert(static_cast<int>(s), segment_box(board.point(small_[s].a), board.point(small_[s].b)));
  index_ = std::move(index);
}

ForceField::ForceField(const Board& board, const ForceConfig& cfg, bool use_index)
    : ForceField(board, cfg, use_index, outer_edges(board)) {}

bool ForceField::co_edge(int u, int v) const {
  const auto& a = vertex_edges_[static_cast<std::size_t>(u)];
  const auto& b = vertex_edges_[static_cast<std::size_t>(v)];
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

double ForceField::beta(int u, int v) const {
  bool gu = board_.vertex(u).kind == VertexKind::Game, gv = board_.vertex(v).kind == VertexKind::Game;
  if (co_edge(u, v)) {
    if (!(gu && gv)) return cfg_.delta;
    const auto& a = vertex_edges_[static_cast<std::size_t>(u)];
    const auto& b = vertex_edges_[static_cast<std::size_t>(v)];
    for (int e : a)
      if (std::binary_search(b.begin(), b.end(), e) && outer_edge_[static_cast<std::size_t>(e)]) return 4 * cfg_.delta;
    return 3 * cfg_.delta;
  }
  return gu || gv ? 2 * cfg_.delta : cfg_.delta;
}

// Position of u as seen from v, nudged off v when the two coincide.
Point ForceField::offset(int u, int v) const {
  Point pu = board_.point(u), pv = board_.point(v);
  if (geo::dist(pu, pv) >= kCoincident) return pu;
  auto h = static_cast<std::uint64_t>(std::min(u, v)) * 0x9E3779B97F4A7C15ull ^
           static_cast<std::uint64_t>(std::max(u, v)) * 0xC2B2AE3D27D4EB4Full;
  double angle = static_cast<double>(h % 3600) / 3600 * 2 * std::numbers::pi;
  Point d{std::cos(angle) * kJitter, std::sin(angle) * kJitter};
  return u < v ? pv + d : pv - d;
}

Point ForceField::force(int v) const {
  Point p = board_.point(v);
  Point f{0, 0};
  for (int s : incident_[static_cast<std::size_t>(v)]) {
    const auto& se = small_[static_cast<std::size_t>(s)];
    f = f + attraction(offset(se.a == v ? se.b : se.a, v), p, cfg_.delta);
  }
  bool game = board_.vertex(v).kind == VertexKind::Game;
  auto near = use_index_ ? index_->vertices.query(point_box(p).grown(4 * cfg_.delta)) : alive_;
  for (int u : near) {
    if (u == v) continue;
    if (co_edge(u, v) && !(game && board_.vertex(u).kind == VertexKind::Game)) continue;
    f = f + repulsion(offset(u, v), p, beta(u, v));
  }
  auto edges_near = [&](Box box) {
    if (use_index_) return index_->edges.query(box);
    std::vector<int> all(small_.size());
    for (std::size_t s = 0; s < all.size(); ++s) all[s] = static_cast<int>(s);
    return all;
  };
  for (int s : edges_near(point_box(p).grown(cfg_.gamma))) {
    const auto& se = small_[static_cast<std::size_t>(s)];
    if (se.a == v || se.b == v) continue;
    f = f + edge_repulsion(p, board_.point(se.a), board_.point(se.b), cfg_.gamma);
  }
  for (const auto& [a, b] : kBorder) f = f + edge_repulsion(p, a, b, cfg_.gamma);
  for (int s : incident_[static_cast<std::size_t>(v)]) {
    const auto& se = small_[static_cast<std::size_t>(s)];
    int w = se.a == v ? se.b : se.a;
    Point pw = board_.point(w);
    auto others = use_index_ ? index_->vertices.query(segment_box(p, pw).grown(cfg_.gamma)) : alive_;
    for (int u : others) {
      if (u == v || u == w) continue;
      f = f - edge_repulsion(board_.point(u), p, pw, cfg_.gamma);
    }
  }
  return f;
}

std::vector<Zone> ForceField::zones() const {
  std::vector<Zone> z(board_.vertices().size());
  for (int v : alive_) z[static_cast<std::size_t>(v)].r.fill(cfg_.m_max);
  double reach = kZoneReach * cfg_.m_max;
  for (int v : alive_) {
    Point p = board_.point(v);
    std::vector<int> near;
    if (use_index_) {
      near = index_->edges.query(point_box(p).grown(reach));
    } else {
      near.resize(small_.size());
      for (std::size_t s = 0; s < near.size(); ++s) near[s] = static_cast<int>(s);
    }
    for (int s : near) {
      const auto& se = small_[static_cast<std::size_t>(s)];
      if (se.a == v || se.b == v) continue;
      Point a = board_.point(se.a), b = board_.point(se.b);
      Point q = geo::closest_on_segment(p, a, b);
      double d = geo::dist(p, q);
      if (d >= reach) continue;
      if (d == 0) {
        for (int x : {v, se.a, se.b}) z[static_cast<std::size_t>(x)].r.fill(0);
        continue;
      }
      Point u = (q - p) * (1 / d);
      double bound = kZoneShare * d;
      z[static_cast<std::size_t>(v)].limit(u, bound);
      z[static_cast<std::size_t>(se.a)].limit(Point{0, 0} - u, bound);
      z[static_cast<std::size_t>(se.b)].limit(Point{0, 0} - u, bound);
    }
    const Point normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    const double gaps[4] = {p.y, 1 - p.x, 1 - p.y, p.x};
    for (int k = 0; k < 4; ++k)
      if (gaps[k] < reach) z[static_cast<std::size_t>(v)].limit(normals[k], kZoneShare * std::max(gaps[k], 0.0));
  }
  return z;
}

MergeStats merge_and_subdivide(Board& board, const ForceConfig& cfg, const std::vector<int>& only_edges) {
  MergeStats stats;
  Quadtree tree;
  for (std::size_t v = 0; v < board.vertices().size(); ++v)
    if (board.vertices()[v].alive) tree.insert(static_cast<int>(v), point_box(board.vertices()[v].p));
  std::vector<int> edges = only_edges;
  if (edges.empty())
    for (std::size_t e = 0; e < board.edges().size(); ++e) edges.push_back(static_cast<int>(e));
  for (int e : edges) {
    for (std::size_t k = 1; k + 1 < board.edges()[static_cast<std::size_t>(e)].path.size();) {
      const auto& path = board.edges()[static_cast<std::size_t>(e)].path;
      bool loop = path.front() == path.back();
      if (path.size() <= (loop ? 4u : 2u)) break;
      int u = path[k - 1], v = path[k], w = path[k + 1];
      Point pu = board.point(u), pv = board.point(v), pw = board.point(w);
      bool ok = board.vertex(v).kind == VertexKind::Inner && geo::dist(pu, pw) < cfg.l_mer;
      if (ok)
        for (int x : tree.query({std::min({pu.x, pv.x, pw.x}), std::min({pu.y, pv.y, pw.y}),
                                 std::max({pu.x, pv.x, pw.x}), std::max({pu.y, pv.y, pw.y})})) {
          if (x == u || x == v || x == w || !board.vertex(x).alive) continue;
          if (in_closed_triangle(board.point(x), pu, pv, pw)) {
            ok = false;
            break;
          }
        }
      if (ok) {
        board.remove_inner_vertex(e, static_cast<int>(k));
        ++stats.merged;
      } else {
        ++k;
      }
    }
  }
  for (int e : edges) {
    for (std::size_t k = 0; k + 1 < board.edges()[static_cast<std::size_t>(e)].path.size(); ++k) {
      const auto& path = board.edges()[static_cast<std::size_t>(e)].path;
      Point a = board.point(path[k]), b = board.point(path[k + 1]);
      double len = geo::dist(a, b);
      if (len <= cfg.l_sub) continue;
      auto parts = static_cast<int>(std::ceil(len / cfg.l_sub));
      for (int i = parts - 1; i >= 1; --i) board.split_small_edge(e, static_cast<int>(k), geo::lerp(a, b, static_cast<double>(i) / parts));
      stats.subdivided += static_cast<std::size_t>(parts - 1);
      k += static_cast<std::size_t>(parts - 1);
    }
  }
  return stats;
}

RedrawReport iterate(Board& board, const RedrawOptions& options) {
  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();
  RedrawReport report;
  ForceConfig cfg = make_config(board.game_vertex_count(), options.overrides);
  auto outer = outer_edges(board);
  std::vector<bool> movable_game(board.vertices().size(), options.only_edges.empty());
  if (!options.only_edges.empty()) {
    std::vector<int> ends(board.vertices().size(), 0), inside(board.vertices().size(), 0);
    for (std::size_t e = 0; e < board.edges().size(); ++e) {
      bool sel = std::find(options.only_edges.begin(), options.only_edges.end(), static_cast<int>(e)) != options.only_edges.end();
      for (int v : {board.edges()[e].path.front(), board.edges()[e].path.back()}) {
        ++ends[static_cast<std::size_t>(v)];
        if (sel) ++inside[static_cast<std::size_t>(v)];
      }
    }
    for (std::size_t v = 0; v < ends.size(); ++v) movable_game[v] = ends[v] > 0 && ends[v] == inside[v];
  }
  for (int it = 0; it < options.iterations; ++it) {
    if (options.time_limit.count() && Clock::now() - start > options.time_limit) {
      report.timed_out = true;
      break;
    }
    std::vector<bool> movable(board.vertices().size(), false);
    for (std::size_t v = 0; v < board.vertices().size(); ++v)
      movable[v] = board.vertices()[v].alive &&
                   (board.vertices()[v].kind == VertexKind::Game ? movable_game[v] : options.only_edges.empty());
    for (int e : options.only_edges) {
      const auto& path = board.edges()[static_cast<std::size_t>(e)].path;
      for (std::size_t k = 1; k + 1 < path.size(); ++k) movable[static_cast<std::size_t>(path[k])] = true;
    }
    ForceField field(board, cfg, options.use_index, outer);
    auto zones = field.zones();
    std::vector<std::pair<int, Point>> moves;
    for (std::size_t v = 0; v < movable.size(); ++v) {
      if (!movable[v]) continue;
      Point f = field.force(static_cast<int>(v));
      double mag = geo::norm(f);
      if (!(mag > 1e-15)) continue;
      double step = std::min({mag, zones[v].radius(f), cfg.m_max});
      if (step <= 0) continue;
      Point p = board.point(static_cast<int>(v));
      Point q = p + f * (step / mag);
      q = {std::clamp(q.x, 0.0, 1.0), std::clamp(q.y, 0.0, 1.0)};
      report.max_displacement = std::max(report.max_displacement, geo::dist(p, q));
      moves.emplace_back(static_cast<int>(v), q);
    }
    for (const auto& [v, q] : moves) board.move_vertex(v, q);
    merge_and_subdivide(board, cfg, options.only_edges);
    ++report.iterations;
  }
  return report;
}

}
