#include "sprouts/autodraw/autodraw.hpp"

#include <algorithm>
#include <limits>

#include "sprouts/core/canonize.hpp"

namespace sprouts::autodraw {

namespace {

using board::Board;
using board::Extraction;

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool is_singleton(const Topology& topo, int w) { return topo.walk(w).corners.front().in < 0; }

struct Candidate {
  Polyline path;
  Enfolding enfolding;
};

struct Plan {
  int face = -1;
  int from = -1;
  int to = -1;
  int beta = -1;
  int first = -1;
  int last = -1;
  std::vector<Candidate> candidates;
};

Plan plan_move(const Board& board, const Topology& topo, const Extraction& ex, const Mesh& mesh,
               const MoveDescriptor& m) {
  Plan plan;
  plan.face = ex.region_face.at(m.region);
  const auto& walks = ex.boundary_walk.at(m.region);
  const auto& occ = ex.occurrence_corner.at(m.region);
  int wa = walks.at(m.from.boundary), wb = walks.at(m.to.boundary);
  int ca = occ.at(m.from.boundary).at(m.from.index), cb = occ.at(m.to.boundary).at(m.to.index);
  plan.from = topo.walk(wa).corners[static_cast<std::size_t>(ca)].vertex;
  plan.to = topo.walk(wb).corners[static_cast<std::size_t>(cb)].vertex;
  if (m.kind == MoveKind::DoubleBoundary) {
    try {
      plan.candidates.push_back({shortest_path(mesh, topo, board, plan.face, {wa, ca}, {wb, cb}), {}});
    } catch (const RouteError&) {
    }
    return plan;
  }
  plan.beta = wa;
  plan.first = ca;
  plan.last = cb;

  std::vector<int> major, minor, singletons;
  std::size_t singleton_major = 0;
  for (std::size_t b = 0; b < walks.size(); ++b) {
    if (b == m.from.boundary) continue;
    int w = walks[b];
    bool in_major = std::find(m.major.begin(), m.major.end(), b) != m.major.end();
    if (is_singleton(topo, w)) {
      singletons.push_back(w);
      if (in_major) ++singleton_major;
    } else {
      (in_major ? major : minor).push_back(w);
    }
  }
  // Singletons are interchangeable: enfold those closest to the connection.
  Point mid = (board.point(plan.from) + board.point(plan.to)) * 0.5;
  std::stable_sort(singletons.begin(), singletons.end(), [&](int x, int y) {
    return dist(board.point(topo.walk(x).corners[0].vertex), mid) < dist(board.point(topo.walk(y).corners[0].vertex), mid);
  });
  for (std::size_t i = 0; i < singletons.size(); ++i) (i < singleton_major ? major : minor).push_back(singletons[i]);

  int border = topo.face(plan.face).border;
  if (border == wa) border = -1;
  for (const auto& e : choose_enfolding(major, minor, border)) {
    try {
      plan.candidates.push_back(
          {enfold(mesh, topo, board, plan.face, wa, ca, cb, e.walks, e.reversed), e});
    } catch (const RouteError&) {
    }
  }
  return plan;
}

struct Drawn {
  Board board;
  board::InsertResult inserted;
  Polyline path;
  Enfolding enfolding;
};

std::optional<Drawn> best_candidate(const Board& board, const Topology& topo, const Plan& plan,
                                    const std::string& target, const AutoDrawOptions& options) {
  std::optional<Drawn> best;
  double best_length = std::numeric_limits<double>::infinity();
  double step = board.optimal();
  for (const auto& c : plan.candidates) {
    std::vector<Polyline> variants;
    if (options.simplify) variants.push_back(resample(simplify(board, c.path, plan.from, plan.to, board.width() / 2), step));
    variants.push_back(resample(c.path, step));
    for (const auto& path : variants) {
      double len = length(path);
      if (len >= best_length) continue;
      try {
        auto vm = board::validate_path(board, topo, path, plan.from, plan.to, 0.0);
        Board copy = board;
        auto inserted = board::insert_move(copy, vm);
        if (board::extract_string(copy) != target) continue;
        best = Drawn{std::move(copy), inserted, path, c.enfolding};
        best_length = len;
        break;
      } catch (const board::BoardError&) {
      }
    }
  }
  return best;
}

Realization realize_planned(Board& board, const Topology& topo, const Extraction& ex, const MoveDescriptor& m,
                            const std::string& target, const AutoDrawOptions& options, nlohmann::json* dump) {
  Mesh mesh(board, topo, options.mesh);
  Plan plan = plan_move(board, topo, ex, mesh, m);
  auto drawn = best_candidate(board, topo, plan, target, options);
  if (dump) {
    (*dump)["triangulation"] = mesh.to_json();
    if (m.kind == MoveKind::SingleBoundary) {
      Spindle s = build_spindle(board, topo, plan.face, plan.beta, plan.first, plan.last);
      nlohmann::json segs = nlohmann::json::array();
      for (auto [a, b] : s.segments) segs.push_back({{a.x, a.y}, {b.x, b.y}});
      (*dump)["spindle"] = {{"walks", s.walks}, {"segments", segs}};
    } else {
      (*dump)["spindle"] = nullptr;
    }
    if (drawn) {
      (*dump)["enfolding"] = {{"walks", drawn->enfolding.walks}, {"reversed", drawn->enfolding.reversed}};
      nlohmann::json path = nlohmann::json::array();
      for (Point p : drawn->path) path.push_back({p.x, p.y});
      (*dump)["path"] = path;
    } else {
      (*dump)["enfolding"] = nullptr;
      (*dump)["path"] = nullptr;
    }
  }
  if (!drawn) throw RealizeError("no drawable curve for " + describe(m));
  if (options.redraw) {
    Board polished = drawn->board;
    auto ro = options.redraw_options;
    ro.only_edges = {drawn->inserted.first_edge, drawn->inserted.second_edge};
    redraw::iterate(polished, ro);
    if (board::check_board(polished).empty() && board::extract_string(polished) == target)
      drawn->board = std::move(polished);
  }
  board = std::move(drawn->board);
  return {drawn->inserted, std::move(drawn->path), m, target};
}

}

std::vector<Enfolding> choose_enfolding(const std::vector<int>& major, const std::vector<int>& minor, int border) {
  if (border >= 0 && contains(major, border)) return {{minor, true}};
  if (border >= 0 && contains(minor, border)) return {{major, false}};
  return {{major, false}, {minor, true}};
}

Spindle build_spindle(const Board& board, const Topology& topo, int face, int beta, int first, int last) {
  Spindle s;
  const auto& f = topo.face(face);
  auto vertices_of = [&](int w) {
    std::vector<Point> out;
    for (const auto& c : topo.walk(w).corners) out.push_back(board.point(c.vertex));
    return out;
  };
  const auto& bw = topo.walk(beta);
  Point mid = (board.point(bw.corners[static_cast<std::size_t>(first)].vertex) +
               board.point(bw.corners[static_cast<std::size_t>(last)].vertex)) * 0.5;
  // Border anchors; the frame of the square stands in for a missing border.
  std::vector<Point> anchors;
  if (f.border < 0) {
    for (Point p : {Point{mid.x, 0}, Point{1, mid.y}, Point{mid.x, 1}, Point{0, mid.y}}) anchors.push_back(p);
  } else {
    const auto& corners = topo.walk(f.border).corners;
    int n = static_cast<int>(corners.size());
    for (int k = 0; k < n; ++k) {
      bool between = f.border == beta && n > 1 &&
                     (first <= last ? (k >= first && k <= last) : (k >= first || k <= last));
      if (!between || n == 1) anchors.push_back(board.point(corners[static_cast<std::size_t>(k)].vertex));
    }
    if (anchors.empty())
      for (const auto& c : corners) anchors.push_back(board.point(c.vertex));
  }
  auto closest = [](const std::vector<Point>& from, const std::vector<Point>& to) {
    std::pair<Point, Point> best{from.front(), to.front()};
    double d = std::numeric_limits<double>::infinity();
    for (Point a : from)
      for (Point b : to)
        if (dist(a, b) < d) {
          d = dist(a, b);
          best = {a, b};
        }
    return best;
  };
  std::vector<int> inner;
  for (int w : f.walks)
    if (w != beta && w != f.border) inner.push_back(w);
  std::vector<Point> here = {closest({mid}, anchors).second};
  Point start = here.front();
  while (!inner.empty()) {
    std::size_t pick = 0;
    std::pair<Point, Point> seg;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < inner.size(); ++i) {
      auto c = closest(here, vertices_of(inner[i]));
      if (dist(c.first, c.second) < d) {
        d = dist(c.first, c.second);
        seg = c;
        pick = i;
      }
    }
    s.segments.push_back(seg);
    s.walks.push_back(inner[pick]);
    here = vertices_of(inner[pick]);
    inner.erase(inner.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::vector<Point> ends;
  for (Point p : anchors)
    if (!(p == start) || anchors.size() == 1) ends.push_back(p);
  s.segments.push_back(closest(here, ends));
  return s;
}

Realization realize_move(Board& board, const MoveDescriptor& m, const AutoDrawOptions& options) {
  Topology topo(board);
  Extraction ex = board::extract(board, topo);
  std::string target = canonical_string(apply_move(ex.position, m));
  return realize_planned(board, topo, ex, m, target, options, nullptr);
}

Realization realize_child(Board& board, const std::string& target, const AutoDrawOptions& options) {
  std::string goal = canonical_string(target);
  Topology topo(board);
  Extraction ex = board::extract(board, topo);
  for (bool dead_minor : {true, false}) {
    EnumerateOptions eo;
    eo.dead_boundaries_minor = dead_minor;
    for (const auto& m : enumerate_moves(ex.position, eo)) {
      if (canonical_string(apply_move(ex.position, m)) != goal) continue;
      try {
        return realize_planned(board, topo, ex, m, goal, options, nullptr);
      } catch (const RealizeError&) {
      }
    }
  }
  throw RealizeError("no drawable move reaches " + goal);
}

nlohmann::json debug_dump(const Board& board, const MoveDescriptor& m, const AutoDrawOptions& options) {
  Board copy = board;
  Topology topo(copy);
  Extraction ex = board::extract(copy, topo);
  std::string target = canonical_string(apply_move(ex.position, m));
  nlohmann::json dump;
  try {
    realize_planned(copy, topo, ex, m, target, options, &dump);
  } catch (const RealizeError&) {
  }
  dump["move"] = describe(m);
  dump["target"] = target;
  return dump;
}

}
