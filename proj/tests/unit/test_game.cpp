#include <gtest/gtest.h>

#include <map>
#include <functional>
#include <random>
#include <thread>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "oracles.hpp"
#include "sprouts/board/snapshot.hpp"
#include "sprouts/core/canonize.hpp"
#include "sprouts/game/service.hpp"
#include "sprouts/game/ws_server.hpp"

using namespace sprouts;
using namespace sprouts::game;
using nlohmann::json;

namespace {

bool mover_wins(const std::string& s) {
  static std::map<std::string, unsigned> memo;
  return oracle::mex_nimber(s, memo) != 0;
}

ServiceOptions no_redraw() {
  ServiceOptions o;
  o.redraw = false;
  return o;
}

SessionConfig quick(int spots, Mode mode, AiLevel level = AiLevel::Perfect) {
  SessionConfig c;
  c.spots = spots;
  c.mode = mode;
  c.ai.level = level;
  c.redraw = false;
  return c;
}

// A stroke from spot a to spot b bending through `via`.
std::vector<Point> stroke(const board::Board& b, int from, Point via, int to) { return {b.point(from), via, b.point(to)}; }

}

TEST(Ai, LevelNames) {
  for (auto l : {AiLevel::Perfect, AiLevel::Strong, AiLevel::Medium, AiLevel::Weak}) EXPECT_EQ(parse_level(to_string(l)), l);
  EXPECT_THROW(parse_level("godlike"), std::invalid_argument);
}

TEST(Ai, ThreeSpotStartPlaysIntoALoss) {
  solver::NimberDatabase db;
  Ai ai(db);
  auto kids = children_strings(oracle::spots(3));
  auto c = ai.choose(kids);
  EXPECT_FALSE(mover_wins(kids[c.index]));
  EXPECT_FALSE(c.fell_back);
}

TEST(Ai, SingleMoveIsPlayedAtEveryLevel) {
  solver::NimberDatabase db;
  for (auto l : {AiLevel::Perfect, AiLevel::Strong, AiLevel::Medium, AiLevel::Weak}) {
    Ai ai(db, {.level = l});
    EXPECT_EQ(ai.choose({"2"}).index, 0u);
  }
}

TEST(Ai, LosingStartMaximizesLosingGrandchildren) {
  solver::NimberDatabase db;
  Ai ai(db);
  auto kids = children_strings(oracle::spots(2));
  double best = -1;
  std::vector<double> ratio;
  for (const auto& k : kids) {
    auto grand = children_strings(k);
    double losing = 0;
    for (const auto& g : grand) losing += !mover_wins(g);
    ratio.push_back(losing / static_cast<double>(grand.size()));
    best = std::max(best, ratio.back());
  }
  auto c = ai.choose(kids);
  EXPECT_EQ(ratio[c.index], best);
}

TEST(Ai, BudgetExhaustionFallsBackWithAFlag) {
  solver::NimberDatabase db;
  AiOptions o;
  o.perfect_budget.max_nodes = 1;
  o.strong_budget.max_nodes = 1;
  Ai ai(db, o);
  auto c = ai.choose(children_strings(oracle::spots(5)));
  EXPECT_TRUE(c.fell_back);
  EXPECT_EQ(c.played, AiLevel::Medium);
}

TEST(Ai, PerfectPlayBeatsRandomOpponents) {
  solver::NimberDatabase db;
  std::mt19937_64 rng(3);
  int games = 0;
  for (int n : {3, 4, 5}) {
    for (int g = 0; g < (n == 5 ? 10 : 20); ++g) {
      Session s("t", quick(n, Mode::VsAi), db);
      // The AI takes whichever seat wins from the start.
      ASSERT_TRUE(mover_wins(s.position()));
      SessionConfig c = quick(n, Mode::VsAi);
      c.ai_player = Player::P1;
      Session game("t", c, db);
      while (!game.over()) {
        if (game.ai_to_move()) {
          game.play_ai();
        } else {
          const auto& kids = game.children();
          game.submit_child(game.turn(), kids[rng() % kids.size()]);
        }
      }
      EXPECT_EQ(game.winner(), Player::P1);
      ++games;
    }
  }
  EXPECT_EQ(games, 50);
}

TEST(Session, FreshGameIsNotOver) {
  solver::NimberDatabase db;
  for (int n = 1; n <= 4; ++n) {
    Session s("t", quick(n, Mode::Hotseat), db);
    EXPECT_FALSE(s.over());
    EXPECT_EQ(s.turn(), Player::P1);
    EXPECT_FALSE(s.winner());
  }
}

TEST(Session, LegalStrokeFlipsTheTurn) {
  solver::NimberDatabase db;
  Session s("t", quick(2, Mode::Hotseat), db);
  const auto& b = s.board();
  s.submit_stroke(Player::P1, stroke(b, 0, (b.point(0) + b.point(1)) * 0.5 + Point{0, 0.05}, 1));
  EXPECT_EQ(s.plies(), 1u);
  EXPECT_EQ(s.turn(), Player::P2);
  EXPECT_EQ(s.position(), board::extract_string(s.board()));
}

TEST(Session, RejectedStrokeChangesNothing) {
  solver::NimberDatabase db;
  Session s("t", quick(3, Mode::Hotseat), db);
  Point mid = (s.board().point(0) + s.board().point(1)) * 0.5;
  s.submit_stroke(Player::P1, stroke(s.board(), 0, mid + Point{0, 0.02}, 1));
  board::Board before = s.board();
  std::string position = s.position();
  // Crosses the first edge.
  Point far = s.board().point(2);
  auto crossing = std::vector<Point>{far, mid + Point{0, 0.3}, mid - Point{0, 0.3}, far};
  try {
    s.submit_stroke(Player::P2, crossing);
    FAIL() << "accepted a crossing stroke";
  } catch (const board::StrokeRejected& e) {
    EXPECT_EQ(e.code(), board::StrokeError::Crossing);
  }
  EXPECT_TRUE(s.board() == before);
  EXPECT_EQ(s.position(), position);
  EXPECT_EQ(s.turn(), Player::P2);
}

TEST(Session, MovesOutOfTurnOrAfterTheEndAreRefused) {
  solver::NimberDatabase db;
  Session s("t", quick(1, Mode::Hotseat), db);
  EXPECT_THROW(s.submit_child(Player::P2, s.children().front()), TurnError);
  while (!s.over()) s.submit_child(s.turn(), s.children().front());
  EXPECT_THROW(s.submit_child(s.turn(), "2"), GameOver);
  SessionConfig c = quick(2, Mode::VsAi);
  Session vs("t", c, db);
  EXPECT_THROW(vs.play_ai(), TurnError);
}

TEST(Session, TwoSpotGameWhereTheFirstPlayerLosesAfterFourMoves) {
  solver::NimberDatabase db;
  Session s("t", quick(2, Mode::Hotseat), db);
  // Choose moves that keep the game as short as possible.
  std::function<int(const std::string&)> shortest = [&](const std::string& p) -> int {
    auto kids = children_strings(p);
    int best = 1000;
    if (kids.empty()) return 0;
    for (const auto& k : kids) best = std::min(best, 1 + shortest(k));
    return best;
  };
  while (!s.over()) {
    auto kids = s.children();
    std::string pick = *std::min_element(kids.begin(), kids.end(), [&](const auto& a, const auto& b) {
      return shortest(a) < shortest(b);
    });
    s.submit_child(s.turn(), pick);
  }
  EXPECT_EQ(s.plies(), 4u);
  EXPECT_EQ(s.winner(), Player::P2);
}

TEST(Session, PlayoutLengthsStayWithinBounds) {
  solver::NimberDatabase db;
  std::mt19937_64 rng(11);
  for (int g = 0; g < 30; ++g) {
    int n = 1 + g % 5;
    Session s("t", quick(n, Mode::Hotseat), db);
    while (!s.over()) {
      const auto& kids = s.children();
      s.submit_child(s.turn(), kids[rng() % kids.size()]);
      ASSERT_EQ(s.position(), board::extract_string(s.board()));
    }
    EXPECT_GE(s.plies(), static_cast<std::size_t>(2 * n));
    EXPECT_LE(s.plies(), static_cast<std::size_t>(3 * n - 1));
  }
}

namespace {

json only(const std::vector<Service::Outgoing>& out, std::size_t i = 0) {
  EXPECT_GT(out.size(), i);
  return out.size() > i ? out[i].message : json();
}

}

TEST(Service, MalformedMessagesGetErrorReplies) {
  solver::NimberDatabase db;
  Service svc(db, no_redraw());
  EXPECT_EQ(only(svc.handle("c", "not json"))["code"], "malformed");
  EXPECT_EQ(only(svc.handle("c", "[1,2]"))["code"], "malformed");
  EXPECT_EQ(only(svc.handle("c", R"({"spots":2})"))["code"], "malformed");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"dance"})"))["code"], "unknown-type");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"new_game","spots":2,"version":7})"))["code"], "version");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"new_game","spots":99})"))["code"], "bad-request");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"new_game","spots":2,"ai_level":"godlike"})"))["code"], "bad-request");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"human_move","stroke":[]})"))["code"], "no-session");

  auto start = only(svc.handle("c", R"({"type":"new_game","spots":2,"mode":"hotseat","version":1})"));
  EXPECT_EQ(start["type"], "game_started");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"human_move","stroke":"zigzag"})"))["code"], "malformed");
  EXPECT_EQ(only(svc.handle("c", R"({"type":"human_move","stroke":[[0.1]]})"))["code"], "malformed");
  // The session survived the bad messages.
  auto g = board::board_from_json(start["geometry"]);
  Point a = g.point(0), b = g.point(1);
  json move = {{"type", "human_move"}, {"stroke", {{a.x, a.y}, {(a.x + b.x) / 2, (a.y + b.y) / 2 + 0.05}, {b.x, b.y}}}};
  auto reply = only(svc.handle("c", move.dump()));
  EXPECT_EQ(reply["type"], "move_accepted");
  EXPECT_EQ(reply["turn"], "P2");
  EXPECT_EQ(board::extract_string(board::board_from_json(reply["geometry"])), reply["position"]);
}

TEST(Service, VsAiGameRunsToTheEnd) {
  solver::NimberDatabase db;
  Service svc(db, no_redraw());
  auto out = svc.handle("c", R"({"type":"new_game","spots":1,"mode":"vs-ai","ai_level":"perfect"})");
  auto start = only(out);
  EXPECT_EQ(start["you"], "P1");
  auto g = board::board_from_json(start["geometry"]);
  Point p = g.point(0);
  // A loop around nothing, leaving the spot to the left.
  json move = {{"type", "human_move"},
               {"stroke", {{p.x, p.y}, {p.x - 0.2, p.y + 0.1}, {p.x - 0.2, p.y - 0.1}, {p.x, p.y}}}};
  out = svc.handle("c", move.dump());
  ASSERT_GE(out.size(), 3u);
  EXPECT_EQ(out[0].message["type"], "move_accepted");
  EXPECT_EQ(out[1].message["type"], "ai_move");
  EXPECT_TRUE(out[1].message["polyline"].is_array());
  EXPECT_EQ(out.back().message["type"], "game_over");
  EXPECT_EQ(out.back().message["winner"], "P2");
  auto late = only(svc.handle("c", move.dump()));
  EXPECT_EQ(late["code"], "game-over");
}

TEST(Service, CrossingStrokeIsRejectedWithItsCode) {
  solver::NimberDatabase db;
  Service svc(db, no_redraw());
  auto g = board::board_from_json(only(svc.handle("c", R"({"type":"new_game","spots":3,"mode":"hotseat"})"))["geometry"]);
  Point a = g.point(0), b = g.point(1), c = g.point(2), mid = (a + b) * 0.5;
  json first = {{"type", "human_move"}, {"stroke", {{a.x, a.y}, {mid.x, mid.y + 0.02}, {b.x, b.y}}}};
  EXPECT_EQ(only(svc.handle("c", first.dump()))["type"], "move_accepted");
  json cross = {{"type", "human_move"},
                {"stroke", {{c.x, c.y}, {mid.x, mid.y + 0.3}, {mid.x, mid.y - 0.3}, {c.x, c.y}}}};
  auto r = only(svc.handle("c", cross.dump()));
  EXPECT_EQ(r["type"], "move_rejected");
  EXPECT_EQ(r["code"], "crossing");
}

TEST(Service, RemotePlayRelaysBetweenTwoClients) {
  solver::NimberDatabase db;
  Service svc(db, no_redraw());
  auto start = only(svc.handle("a", R"({"type":"new_game","spots":2,"mode":"remote"})"));
  std::string id = start["session"];
  auto g = board::board_from_json(start["geometry"]);
  Point p = g.point(0), q = g.point(1);
  json move = {{"type", "human_move"}, {"stroke", {{p.x, p.y}, {(p.x + q.x) / 2, (p.y + q.y) / 2 + 0.05}, {q.x, q.y}}}};
  EXPECT_EQ(only(svc.handle("a", move.dump()))["code"], "out-of-turn");
  auto joined = svc.handle("b", json{{"type", "join_game"}, {"session", id}}.dump());
  ASSERT_EQ(joined.size(), 2u);
  EXPECT_EQ(joined[0].message["you"], "P2");
  EXPECT_EQ(joined[1].connection, "a");
  EXPECT_EQ(only(svc.handle("c", json{{"type", "join_game"}, {"session", id}}.dump()))["code"], "session-full");
  EXPECT_EQ(only(svc.handle("b", move.dump()))["code"], "out-of-turn");
  auto relayed = svc.handle("a", move.dump());
  ASSERT_EQ(relayed.size(), 2u);
  EXPECT_EQ(relayed[0].message, relayed[1].message);
  EXPECT_EQ(svc.session_count(), 1u);
  svc.disconnect("a");
  svc.disconnect("b");
  EXPECT_EQ(svc.session_count(), 0u);
}

TEST(WsServer, SpeaksTheProtocolOverWebSocket) {
  namespace beast = boost::beast;
  namespace asio = boost::asio;
  solver::NimberDatabase db;
  Service svc(db, no_redraw());
  WsServer server(svc, "127.0.0.1", 0);
  std::thread loop([&] { server.run(); });

  asio::io_context ioc;
  asio::ip::tcp::resolver resolver(ioc);
  beast::websocket::stream<asio::ip::tcp::socket> ws(ioc);
  asio::connect(ws.next_layer(), resolver.resolve("127.0.0.1", std::to_string(server.port())));
  ws.handshake("127.0.0.1", "/");
  auto roundtrip = [&](const std::string& text) {
    ws.write(asio::buffer(text));
    beast::flat_buffer buffer;
    ws.read(buffer);
    return json::parse(beast::buffers_to_string(buffer.data()));
  };
  EXPECT_EQ(roundtrip("{oops")["code"], "malformed");
  auto started = roundtrip(R"({"type":"new_game","spots":2,"mode":"hotseat"})");
  EXPECT_EQ(started["type"], "game_started");
  EXPECT_EQ(started["position"], "0.0");
  ws.close(beast::websocket::close_code::normal);

  server.stop();
  loop.join();
}

TEST(WsServer, BindFailureThrows) {
  solver::NimberDatabase db;
  Service svc(db);
  WsServer first(svc, "127.0.0.1", 0);
  EXPECT_ANY_THROW(WsServer(svc, "127.0.0.1", first.port()));
}
