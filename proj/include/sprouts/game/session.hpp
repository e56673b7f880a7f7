#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprouts/autodraw/autodraw.hpp"
#include "sprouts/board/insertion.hpp"
#include "sprouts/game/ai.hpp"
#include "sprouts/redraw/redraw.hpp"

namespace sprouts::game {

using geo::Point;

enum class Mode { VsAi, Hotseat, Remote };
enum class Player { P1, P2 };

const char* to_string(Mode m);
Mode parse_mode(std::string_view name);
const char* to_string(Player p);
inline Player other(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }

// Move out of turn, after the game ended, or by the wrong kind of player.
class TurnError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class GameOver : public TurnError {
public:
  GameOver() : TurnError("game over") {}
};

struct SessionConfig {
  int spots = 2;
  Mode mode = Mode::VsAi;
  AiOptions ai;
  Player ai_player = Player::P2;  // vs-ai only
  bool redraw = true;
  redraw::RedrawOptions redraw_options;
};

struct Ply {
  Player player = Player::P1;
  bool by_ai = false;
  std::string position;  // canonical string after the ply
  std::vector<Point> polyline;
  int new_vertex = -1;
};

class Session {
public:
  Session(std::string id, SessionConfig config, solver::NimberDatabase& db);

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const board::Board& board() const { return board_; }
  // Canonical string kept in step with the board.
  const std::string& position() const { return mirror_; }
  Player turn() const { return turn_; }
  std::size_t plies() const { return log_.size(); }
  const std::vector<Ply>& log() const { return log_; }
  bool over() const { return children_.empty(); }
  // The player who made the last move, once the game is over.
  std::optional<Player> winner() const;
  bool ai_to_move() const { return config_.mode == Mode::VsAi && !over() && turn_ == config_.ai_player; }

  // Freehand move; StrokeRejected leaves the session unchanged.
  const Ply& submit_stroke(Player who, const std::vector<Point>& stroke);
  // Move given by its resulting canonical string, drawn automatically.
  const Ply& submit_child(Player who, const std::string& child);
  const Ply& play_ai();

  // Canonical strings of the moves available on the board.
  const std::vector<std::string>& children() const { return children_; }

private:
  void check_turn(Player who) const;
  const Ply& commit(board::Board next, Ply ply);

  std::string id_;
  SessionConfig config_;
  board::Board board_;
  std::string mirror_;
  std::vector<std::string> children_;
  Player turn_ = Player::P1;
  std::vector<Ply> log_;
  std::unique_ptr<Ai> ai_;
};

}
