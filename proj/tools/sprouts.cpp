#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "sprouts/board/snapshot.hpp"
#include "sprouts/core/canonize.hpp"
#include "sprouts/game/service.hpp"
#include "sprouts/game/ws_server.hpp"
#include "sprouts/solver/tree.hpp"

using namespace sprouts;

namespace {

struct DbFlags {
  std::string path;
  bool save = false;
};

// --db, then SPROUTS_DB, then the database shipped with the sources.
std::string database_path(const DbFlags& flags) {
  if (!flags.path.empty()) return flags.path;
  if (const char* env = std::getenv("SPROUTS_DB"); env && *env) return env;
#ifdef SPROUTS_DATA_DIR
  std::filesystem::path shipped = std::filesystem::path(SPROUTS_DATA_DIR) / "nimbers.db";
  if (std::filesystem::exists(shipped)) return shipped.string();
#endif
  return {};
}

void load_database(solver::NimberDatabase& db, const std::string& path) {
  if (!path.empty() && std::filesystem::exists(path)) db.load(path);
}

void add_db_flags(CLI::App* app, DbFlags& flags) {
  app->add_option("--db", flags.path, "Nimber database file (default: $SPROUTS_DB)");
  app->add_flag("--save-db", flags.save, "Write new database entries back to the file");
}

void maybe_save(const solver::NimberDatabase& db, const DbFlags& flags) {
  auto path = database_path(flags);
  if (flags.save && !path.empty()) db.save(path);
}

redraw::RedrawOptions redraw_options(const std::string& config) {
  return config.empty() ? redraw::RedrawOptions{} : redraw::load_options(config);
}

std::string outcome_line(solver::Solver& s, const std::string& position, bool nimber) {
  return nimber ? std::to_string(s.nimber(position)) : solver::to_string(s.outcome(position));
}

int selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    failures += !ok;
  };
  solver::NimberDatabase db;
  solver::Solver s(db);
  const char* expected[] = {"Loss", "Loss", "Win", "Win", "Win"};
  bool outcomes = true;
  for (int n = 1; n <= 5; ++n) outcomes &= s.outcome(solver::spots_position(n)) == (expected[n - 1][0] == 'W' ? solver::Outcome::Win : solver::Outcome::Loss);
  report("outcomes for 1..5 spots", outcomes);

  std::mt19937_64 rng(1);
  bool drawn = true;
  for (int game = 0; game < 5 && drawn; ++game) {
    game::SessionConfig c;
    c.spots = 2 + game % 3;
    c.mode = game::Mode::Hotseat;
    game::Session session("selftest", c, db);
    while (!session.over() && drawn) {
      const auto& kids = session.children();
      session.submit_child(session.turn(), kids[rng() % kids.size()]);
      drawn = board::extract_string(session.board()) == session.position() && board::crossing_count(session.board()) == 0;
    }
  }
  report("auto-drawn playouts round-trip", drawn);

  board::Board b = board::Board::spots(4);
  std::string before = board::extract_string(b);
  redraw::iterate(b, {});
  report("redraw keeps the position", board::extract_string(b) == before && board::crossing_count(b) == 0);
  return failures ? 1 : 0;
}

void print_board(const game::Session& s) {
  std::cout << "position: " << (s.position().empty() ? "(none)" : s.position()) << "   turn: " << game::to_string(s.turn())
            << "\n";
}

int play_terminal(game::Session& s, bool self_play, const std::string& snapshot, solver::NimberDatabase& db,
                  const game::AiOptions& ai_options) {
  game::Ai other(db, ai_options);
  print_board(s);
  while (!s.over()) {
    if (s.ai_to_move()) {
      s.play_ai();
      std::cout << "ai " << game::to_string(game::other(s.turn())) << " -> " << (s.log().back().position.empty() ? "(end)" : s.log().back().position) << "\n";
      continue;
    }
    const auto& kids = s.children();
    std::size_t pick = 0;
    if (self_play) {
      pick = other.choose(kids).index;
    } else {
      for (std::size_t i = 0; i < kids.size(); ++i) std::cout << "  [" << i << "] " << kids[i] << "\n";
      std::cout << "move> " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line) || line == "q") return 0;
      try {
        pick = std::stoul(line);
      } catch (const std::exception&) {
        pick = kids.size();
      }
      if (pick >= kids.size()) {
        std::cout << "pick a number between 0 and " << kids.size() - 1 << "\n";
        continue;
      }
    }
    s.submit_child(s.turn(), kids[pick]);
    std::cout << game::to_string(game::other(s.turn())) << " -> " << (s.log().back().position.empty() ? "(end)" : s.log().back().position) << "\n";
  }
  std::cout << "winner: " << game::to_string(*s.winner()) << " after " << s.plies() << " moves\n";
  if (!snapshot.empty()) std::ofstream(snapshot) << board::to_json(s.board()).dump(2) << "\n";
  return 0;
}

}

int main(int argc, char** argv) {
  CLI::App app{"Sprouts engine: solver, drawing and game service"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Outcome or nimber of a position");
  std::string position;
  bool nimber = false, stats = false;
  unsigned threads = 1;
  std::uint64_t budget = 0;
  double timeout = 0;
  DbFlags solve_db;
  solve->add_option("position", position, "Position string, e.g. 0.0.0")->required();
  solve->add_flag("--nimber", nimber, "Print the nimber instead of Win/Loss");
  solve->add_option("--threads", threads, "Solver workers")->check(CLI::Range(1u, 256u));
  solve->add_option("--budget", budget, "Node budget (0 = unlimited)");
  solve->add_option("--timeout", timeout, "Time limit in seconds (0 = unlimited)");
  solve->add_flag("--stats", stats, "Print search statistics on stderr");
  add_db_flags(solve, solve_db);

  auto* tree = app.add_subcommand("tree", "Count the game tree of the n-spot start");
  int tree_spots = 1;
  bool count = false;
  unsigned tree_threads = 1;
  tree->add_option("--spots", tree_spots, "Number of spots")->required()->check(CLI::Range(1, 11));
  tree->add_flag("--count", count, "Print the number of distinct canonical positions")->required();
  tree->add_option("--threads", tree_threads, "Workers")->check(CLI::Range(1u, 256u));

  auto* play = app.add_subcommand("play", "Play a game in the terminal or serve the WebSocket protocol");
  int spots = 2;
  std::string level = "perfect", mode = "vs-ai", address = "127.0.0.1", redraw_config, snapshot;
  bool serve = false, no_redraw = false, ai_first = false, self_play = false;
  unsigned short port = 8080;
  std::uint64_t seed = 1;
  DbFlags play_db;
  play->add_option("--spots", spots, "Number of spots")->check(CLI::Range(1, 11));
  play->add_option("--ai", level, "AI level: perfect, strong, medium, weak");
  play->add_flag("--ai-first", ai_first, "The AI moves first");
  play->add_flag("--self-play", self_play, "Let a second AI play the other side");
  play->add_flag("--serve", serve, "Run the WebSocket service instead");
  play->add_option("--address", address, "Address to listen on");
  play->add_option("--port", port, "Port to listen on");
  play->add_flag("--no-redraw", no_redraw, "Skip the redraw pass after each move");
  play->add_option("--redraw-config", redraw_config, "JSON file with redraw parameters")->check(CLI::ExistingFile);
  play->add_option("--seed", seed, "Seed for the lower AI levels");
  play->add_option("--snapshot", snapshot, "Write the final board snapshot to this file");
  add_db_flags(play, play_db);

  auto* self = app.add_subcommand("selftest", "Quick end-to-end checks");

  auto* gen = app.add_subcommand("gen-db", "Solve the n-spot starts and write the nimber database");
  int gen_spots = 7;
  std::string out_path;
  gen->add_option("--spots", gen_spots, "Solve 1..N spots")->check(CLI::Range(1, 11));
  gen->add_option("--out", out_path, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      solver::NimberDatabase db;
      load_database(db, database_path(solve_db));
      solver::SolverOptions o;
      o.threads = threads;
      o.limits.max_nodes = budget;
      o.limits.time_limit = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      solver::Solver s(db, o);
      try {
        std::cout << outcome_line(s, position, nimber) << "\n";
      } catch (const solver::BudgetExceeded& e) {
        std::cout << "Unknown\n";
        std::cerr << e.what() << "\n";
        return 3;
      }
      if (stats) {
        auto st = s.stats();
        std::cerr << "expansions " << st.expansions << " db_hits " << st.db_hits << " win_cache_hits "
                  << st.win_cache_hits << " db_size " << db.size() << "\n";
      }
      maybe_save(db, solve_db);
      return 0;
    }
    if (*tree) {
      std::cout << solver::count_tree(tree_spots, tree_threads).positions << "\n";
      return 0;
    }
    if (*self) return selftest();
    if (*gen) {
      solver::NimberDatabase db;
      db.set_source("solved 1.." + std::to_string(gen_spots) + " spots");
      solver::Solver s(db);
      for (int n = 1; n <= gen_spots; ++n)
        std::cout << n << " spots: " << solver::to_string(s.outcome(solver::spots_position(n))) << "\n";
      db.save(out_path);
      std::cout << db.size() << " entries written to " << out_path << "\n";
      return 0;
    }
    if (*play) {
      solver::NimberDatabase db;
      load_database(db, database_path(play_db));
      game::AiOptions ai;
      ai.level = game::parse_level(level);
      ai.seed = seed;
      if (serve) {
        game::ServiceOptions so;
        so.ai = ai;
        so.redraw = !no_redraw;
        so.redraw_options = redraw_options(redraw_config);
        game::Service service(db, so);
        game::WsServer server(service, address, port);
        std::cerr << "listening on ws://" << address << ":" << server.port() << "\n";
        server.run();
        return 0;
      }
      game::SessionConfig c;
      c.spots = spots;
      c.mode = game::parse_mode(mode);
      c.ai = ai;
      c.ai_player = ai_first ? game::Player::P1 : game::Player::P2;
      c.redraw = !no_redraw;
      c.redraw_options = redraw_options(redraw_config);
      game::Session session("cli", c, db);
      auto other = ai;
      other.seed = seed + 1;
      int rc = play_terminal(session, self_play, snapshot, db, other);
      maybe_save(db, play_db);
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
