#include "sprouts/game/session.hpp"

#include <algorithm>

#include "sprouts/core/canonize.hpp"

namespace sprouts::game {

namespace {

std::vector<std::string> board_children(const board::Board& b) {
  std::vector<std::string> out;
  for (auto& c : enumerate_children(board::extract(b).position)) out.push_back(std::move(c.canonical));
  return out;
}

}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::VsAi: return "vs-ai";
    case Mode::Hotseat: return "hotseat";
    case Mode::Remote: return "remote";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (auto m : {Mode::VsAi, Mode::Hotseat, Mode::Remote})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

const char* to_string(Player p) { return p == Player::P1 ? "P1" : "P2"; }

Session::Session(std::string id, SessionConfig config, solver::NimberDatabase& db)
    : id_(std::move(id)), config_(std::move(config)), board_(board::Board::spots(config_.spots)) {
  if (config_.spots < 1 || config_.spots > 26) throw std::invalid_argument("spots must be between 1 and 26");
  mirror_ = board::extract_string(board_);
  children_ = board_children(board_);
  if (config_.mode == Mode::VsAi) ai_ = std::make_unique<Ai>(db, config_.ai);
}

std::optional<Player> Session::winner() const {
  if (!over() || log_.empty()) return std::nullopt;
  return log_.back().player;
}

void Session::check_turn(Player who) const {
  if (over()) throw GameOver();
  if (who != turn_) throw TurnError("not your turn");
}

const Ply& Session::submit_stroke(Player who, const std::vector<Point>& stroke) {
  check_turn(who);
  if (ai_to_move()) throw TurnError("waiting for the AI");
  board::Board next = board_;
  board::Topology topo(next);
  auto vm = board::validate_stroke(next, topo, stroke);
  auto inserted = board::insert_move(next, vm);
  if (config_.redraw) redraw::iterate(next, config_.redraw_options);
  std::string position = board::extract_string(next);
  return commit(std::move(next), {who, false, position, vm.path, inserted.new_vertex});
}

const Ply& Session::submit_child(Player who, const std::string& child) {
  check_turn(who);
  if (ai_to_move()) throw TurnError("waiting for the AI");
  board::Board next = board_;
  autodraw::AutoDrawOptions options;
  options.redraw = config_.redraw;
  auto r = autodraw::realize_child(next, child, options);
  return commit(std::move(next), {who, false, r.position, r.path, r.inserted.new_vertex});
}

const Ply& Session::play_ai() {
  if (!ai_to_move()) throw TurnError("not the AI's turn");
  auto choice = ai_->choose(children_);
  board::Board next = board_;
  autodraw::AutoDrawOptions options;
  options.redraw = config_.redraw;
  auto r = autodraw::realize_child(next, children_[choice.index], options);
  return commit(std::move(next), {turn_, true, r.position, r.path, r.inserted.new_vertex});
}

const Ply& Session::commit(board::Board next, Ply ply) {
  // The mirror only ever moves to a child of itself, and the board agrees.
  if (std::find(children_.begin(), children_.end(), ply.position) == children_.end())
    throw std::logic_error("move does not lead to a child of " + mirror_);
  if (board::extract_string(next) != ply.position) throw std::logic_error("board and position disagree");
  board_ = std::move(next);
  mirror_ = ply.position;
  children_ = board_children(board_);
  turn_ = other(turn_);
  log_.push_back(std::move(ply));
  return log_.back();
}

}
