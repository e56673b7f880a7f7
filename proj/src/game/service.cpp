#include "sprouts/game/service.hpp"

#include "sprouts/board/snapshot.hpp"

namespace sprouts::game {

namespace {

using nlohmann::json;

class BadRequest : public std::runtime_error {
public:
  BadRequest(std::string code, const std::string& detail) : std::runtime_error(detail), code(std::move(code)) {}
  std::string code;
};

json polyline_json(const std::vector<Point>& path) {
  json out = json::array();
  for (Point p : path) out.push_back({p.x, p.y});
  return out;
}

std::vector<Service::Outgoing> to_all(const std::map<std::string, Player>& players, const json& msg) {
  std::vector<Service::Outgoing> out;
  for (const auto& [c, seat] : players) out.push_back({c, msg});
  return out;
}

void append(std::vector<Service::Outgoing>& out, std::vector<Service::Outgoing> more) {
  for (auto& m : more) out.push_back(std::move(m));
}

json started(const Session& s, Player you) {
  return {{"type", "game_started"},
          {"session", s.id()},
          {"mode", to_string(s.config().mode)},
          {"you", to_string(you)},
          {"turn", to_string(s.turn())},
          {"position", s.position()},
          {"geometry", board::to_json(s.board())}};
}

json game_over(const Session& s) { return {{"type", "game_over"}, {"winner", to_string(*s.winner())}, {"plies", s.plies()}}; }

// AI replies until a human is to move or the game ends.
std::vector<Service::Outgoing> after_move(Session& s, const std::map<std::string, Player>& players) {
  std::vector<Service::Outgoing> out;
  while (s.ai_to_move()) {
    const Ply& ply = s.play_ai();
    append(out, to_all(players, {{"type", "ai_move"},
                                 {"polyline", polyline_json(ply.polyline)},
                                 {"geometry", board::to_json(s.board())},
                                 {"new_vertex", ply.new_vertex},
                                 {"turn", to_string(s.turn())},
                                 {"position", s.position()}}));
  }
  if (s.over()) append(out, to_all(players, game_over(s)));
  return out;
}

template <class T>
T field(const json& msg, const char* name) {
  if (!msg.contains(name)) throw BadRequest("malformed", std::string("missing field ") + name);
  try {
    return msg.at(name).get<T>();
  } catch (const json::exception&) {
    throw BadRequest("malformed", std::string("bad field ") + name);
  }
}

}

json error_message(const std::string& code, const std::string& detail) {
  return {{"type", "error"}, {"code", code}, {"detail", detail}};
}

Service::Service(solver::NimberDatabase& db, ServiceOptions options) : db_(db), options_(std::move(options)) {}

std::vector<Service::Outgoing> Service::handle(const std::string& connection, const std::string& text) {
  try {
    json msg = json::parse(text, nullptr, false);
    if (msg.is_discarded() || !msg.is_object()) throw BadRequest("malformed", "not a JSON object");
    if (msg.contains("version") && msg["version"] != kProtocolVersion)
      throw BadRequest("version", "protocol version " + std::to_string(kProtocolVersion) + " expected");
    auto type = field<std::string>(msg, "type");
    if (type == "new_game") return new_game(connection, msg);
    if (type == "join_game") return join_game(connection, msg);
    if (type == "human_move") return human_move(connection, msg);
    throw BadRequest("unknown-type", "unknown message type " + type);
  } catch (const BadRequest& e) {
    return {{connection, error_message(e.code, e.what())}};
  } catch (const GameOver& e) {
    return {{connection, error_message("game-over", e.what())}};
  } catch (const TurnError& e) {
    return {{connection, error_message("out-of-turn", e.what())}};
  } catch (const std::exception& e) {
    return {{connection, error_message("internal", e.what())}};
  }
}

std::vector<Service::Outgoing> Service::new_game(const std::string& connection, const json& msg) {
  SessionConfig config;
  config.spots = field<int>(msg, "spots");
  if (config.spots < 1 || config.spots > options_.max_spots)
    throw BadRequest("bad-request", "spots must be between 1 and " + std::to_string(options_.max_spots));
  try {
    config.mode = parse_mode(msg.value("mode", std::string("vs-ai")));
    config.ai = options_.ai;
    config.ai.level = parse_level(msg.value("ai_level", std::string("perfect")));
  } catch (const std::invalid_argument& e) {
    throw BadRequest("bad-request", e.what());
  }
  config.ai_player = msg.value("ai_first", false) ? Player::P1 : Player::P2;
  config.redraw = options_.redraw;
  config.redraw_options = options_.redraw_options;

  auto live = std::make_shared<Live>();
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  live->session = std::make_unique<Session>(id, config, db_);
  Player seat = config.mode == Mode::VsAi ? other(config.ai_player) : Player::P1;
  live->players[connection] = seat;
  {
    std::lock_guard lock(mu_);
    sessions_[id] = live;
  }
  bind(connection, id);
  std::lock_guard lock(live->mu);
  std::vector<Outgoing> out{{connection, started(*live->session, seat)}};
  append(out, after_move(*live->session, live->players));
  return out;
}

std::vector<Service::Outgoing> Service::join_game(const std::string& connection, const json& msg) {
  auto id = field<std::string>(msg, "session");
  std::shared_ptr<Live> live;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw BadRequest("no-session", "no session " + id);
    live = it->second;
  }
  std::vector<Outgoing> out;
  {
    std::lock_guard lock(live->mu);
    if (live->session->config().mode != Mode::Remote) throw BadRequest("bad-request", "session is not remote");
    if (live->players.contains(connection)) throw BadRequest("bad-request", "already seated in session " + id);
    if (live->players.size() >= 2) throw BadRequest("session-full", "session " + id + " already has two players");
    live->players[connection] = Player::P2;
    out.push_back({connection, started(*live->session, Player::P2)});
    for (const auto& [c, seat] : live->players)
      if (c != connection) out.push_back({c, {{"type", "player_joined"}, {"player", "P2"}}});
  }
  bind(connection, id);
  return out;
}

std::vector<Service::Outgoing> Service::human_move(const std::string& connection, const json& msg) {
  auto live = bound(connection);
  if (!live) throw BadRequest("no-session", "start or join a game first");
  if (!msg.contains("stroke") || !msg["stroke"].is_array()) throw BadRequest("malformed", "stroke must be an array");
  const auto& raw = msg["stroke"];
  if (raw.size() > options_.max_stroke_points) throw BadRequest("malformed", "stroke has too many points");
  std::vector<Point> stroke;
  for (const auto& p : raw) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw BadRequest("malformed", "stroke points must be [x, y] pairs");
    stroke.push_back({p[0].get<double>(), p[1].get<double>()});
  }

  std::lock_guard lock(live->mu);
  Session& s = *live->session;
  Player seat = s.config().mode == Mode::Hotseat ? s.turn() : live->players.at(connection);
  if (s.config().mode == Mode::Remote && live->players.size() < 2) throw TurnError("waiting for the second player");
  const Ply* ply = nullptr;
  try {
    ply = &s.submit_stroke(seat, stroke);
  } catch (const board::StrokeRejected& e) {
    return {{connection, {{"type", "move_rejected"}, {"code", board::to_string(e.code())}, {"detail", e.what()}}}};
  }
  auto out = to_all(live->players, {{"type", "move_accepted"},
                                    {"player", to_string(ply->player)},
                                    {"polyline", polyline_json(ply->polyline)},
                                    {"geometry", board::to_json(s.board())},
                                    {"new_vertex", ply->new_vertex},
                                    {"turn", to_string(s.turn())},
                                    {"position", s.position()}});
  append(out, after_move(s, live->players));
  return out;
}

void Service::disconnect(const std::string& connection) {
  std::shared_ptr<Live> live;
  std::string id;
  {
    std::lock_guard lock(mu_);
    auto it = binding_.find(connection);
    if (it == binding_.end()) return;
    id = it->second;
    binding_.erase(it);
    live = sessions_.at(id);
  }
  std::lock_guard lock(live->mu);
  live->players.erase(connection);
  if (live->players.empty()) {
    std::lock_guard guard(mu_);
    sessions_.erase(id);
  }
}

std::size_t Service::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::shared_ptr<Service::Live> Service::bound(const std::string& connection) const {
  std::lock_guard lock(mu_);
  auto it = binding_.find(connection);
  if (it == binding_.end()) return nullptr;
  auto s = sessions_.find(it->second);
  return s == sessions_.end() ? nullptr : s->second;
}

void Service::bind(const std::string& connection, const std::string& session) {
  std::string previous;
  {
    std::lock_guard lock(mu_);
    auto it = binding_.find(connection);
    if (it != binding_.end() && it->second != session) previous = it->second;
  }
  if (!previous.empty()) {
    disconnect(connection);
  }
  std::lock_guard lock(mu_);
  binding_[connection] = session;
}

}
