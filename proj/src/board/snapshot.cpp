#include "sprouts/board/snapshot.hpp"

namespace sprouts::board {

using nlohmann::json;

json to_json(const Board& board, const Topology& topo) {
  json out;
  out["version"] = 1;
  auto& vs = out["vertices"] = json::array();
  for (std::size_t v = 0; v < board.vertices().size(); ++v) {
    const auto& bv = board.vertices()[v];
    if (!bv.alive) continue;
    vs.push_back({{"id", v}, {"x", bv.p.x}, {"y", bv.p.y}, {"kind", bv.kind == VertexKind::Game ? "game" : "inner"}});
  }
  auto& es = out["edges"] = json::array();
  for (std::size_t e = 0; e < board.edges().size(); ++e) es.push_back({{"id", e}, {"path", board.edges()[e].path}});
  auto& bs = out["boundaries"] = json::array();
  for (std::size_t w = 0; w < topo.walks().size(); ++w) {
    const auto& walk = topo.walks()[w];
    json b{{"id", w}, {"region", walk.face}, {"outer", walk.outer}};
    if (walk.corners.size() == 1 && walk.corners[0].out == -1) {
      b["vertex"] = walk.corners[0].vertex;
      b["edges"] = json::array();
    } else {
      json refs = json::array();
      int last_edge = -1;
      bool last_forward = true;
      for (const auto& c : walk.corners) {
        const auto& d = topo.dart(c.out);
        if (d.edge == last_edge && d.forward == last_forward && board.vertex(d.from).kind == VertexKind::Inner) continue;
        refs.push_back({{"edge", d.edge}, {"reversed", !d.forward}});
        last_edge = d.edge;
        last_forward = d.forward;
      }
      b["edges"] = std::move(refs);
    }
    bs.push_back(std::move(b));
  }
  auto& rs = out["regions"] = json::array();
  for (std::size_t f = 0; f < topo.faces().size(); ++f) {
    const auto& face = topo.faces()[f];
    rs.push_back({{"id", f},
                  {"border", face.border == -1 ? json() : json(face.border)},
                  {"boundaries", face.walks},
                  {"parent", face.parent == -1 ? json() : json(face.parent)},
                  {"children", face.children}});
  }
  return out;
}

json to_json(const Board& board) { return to_json(board, Topology(board)); }

Board board_from_json(const json& snapshot) {
  try {
    const auto& vs = snapshot.at("vertices");
    std::size_t count = 0;
    for (const auto& v : vs) count = std::max(count, v.at("id").get<std::size_t>() + 1);
    std::vector<const json*> by_id(count, nullptr);
    for (const auto& v : vs) {
      auto id = v.at("id").get<std::size_t>();
      if (by_id[id]) throw BoardError("duplicate vertex id " + std::to_string(id));
      by_id[id] = &v;
    }
    Board board;
    for (std::size_t id = 0; id < count; ++id) {
      if (!by_id[id]) {
        board.remove_vertex(board.add_vertex({}, VertexKind::Inner));
        continue;
      }
      const auto& v = *by_id[id];
      Point p{v.at("x").get<double>(), v.at("y").get<double>()};
      if (!(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1)) throw BoardError("vertex outside the unit square");
      auto kind = v.at("kind").get<std::string>();
      if (kind != "game" && kind != "inner") throw BoardError("unknown vertex kind '" + kind + "'");
      board.add_vertex(p, kind == "game" ? VertexKind::Game : VertexKind::Inner);
    }
    for (const auto& e : snapshot.at("edges")) {
      auto path = e.at("path").get<std::vector<int>>();
      for (int v : path)
        if (v < 0 || static_cast<std::size_t>(v) >= count) throw BoardError("edge refers to unknown vertex");
      board.add_edge(std::move(path));
    }
    return board;
  } catch (const json::exception& e) {
    throw BoardError(std::string("malformed snapshot: ") + e.what());
  }
}

}
