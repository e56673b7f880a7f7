#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "sprouts/game/session.hpp"

namespace sprouts::game {

struct ServiceOptions {
  AiOptions ai;  // level is taken from each new_game
  bool redraw = true;
  redraw::RedrawOptions redraw_options;
  int max_spots = 11;
  std::size_t max_stroke_points = 4096;
};

// JSON wire protocol. Connections are opaque ids chosen by the transport;
// each is bound to at most one session. Replies may address other
// connections of the same session (remote play).
class Service {
public:
  static constexpr int kProtocolVersion = 1;

  struct Outgoing {
    std::string connection;
    nlohmann::json message;
  };

  explicit Service(solver::NimberDatabase& db, ServiceOptions options = {});

  std::vector<Outgoing> handle(const std::string& connection, const std::string& text);
  void disconnect(const std::string& connection);
  std::size_t session_count() const;

private:
  struct Live {
    std::mutex mu;
    std::unique_ptr<Session> session;
    std::map<std::string, Player> players;  // connection -> seat
  };

  std::vector<Outgoing> new_game(const std::string& connection, const nlohmann::json& msg);
  std::vector<Outgoing> join_game(const std::string& connection, const nlohmann::json& msg);
  std::vector<Outgoing> human_move(const std::string& connection, const nlohmann::json& msg);
  std::shared_ptr<Live> bound(const std::string& connection) const;
  void bind(const std::string& connection, const std::string& session);

  solver::NimberDatabase& db_;
  ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Live>> sessions_;
  std::map<std::string, std::string> binding_;  // connection -> session id
  std::uint64_t next_id_ = 1;
};

nlohmann::json error_message(const std::string& code, const std::string& detail);

}
