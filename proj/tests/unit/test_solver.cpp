#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "sprouts/solver/solver.hpp"
#include "sprouts/solver/tree.hpp"

using namespace sprouts;
using namespace sprouts::solver;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sprouts_test_" + name);
}

}

TEST(Xor, Basics) {
  std::vector<Nimber> same = {5, 5};
  EXPECT_EQ(xor_merge(same), 0u);
  std::vector<Nimber> v = {1, 2};
  EXPECT_EQ(xor_merge(v), 3u);
  EXPECT_EQ(xor_merge({}), 0u);
}

TEST(Order, Deterministic) {
  EXPECT_EQ(order_children({"0"}), std::vector<std::string>{"0"});
  EXPECT_EQ(order_children({"12", "0+0", "1a1a", "0"}), (std::vector<std::string>{"0", "12", "1a1a", "0+0"}));
  EXPECT_EQ(order_children({"AB", "1a"}), (std::vector<std::string>{"1a", "AB"}));
}

TEST(Outcome, SmallCouples) {
  NimberDatabase db;
  Solver s(db);
  EXPECT_EQ(s.outcome("", 0), Outcome::Loss);
  EXPECT_EQ(s.outcome("", 2), Outcome::Win);
  EXPECT_EQ(s.outcome("0", 0), Outcome::Loss);
  EXPECT_EQ(s.outcome("0", 1), Outcome::Win);
}

TEST(Nimber, SmallPositions) {
  NimberDatabase db;
  Solver s(db);
  EXPECT_EQ(s.nimber(""), 0u);
  EXPECT_EQ(s.nimber("0"), 0u);
  EXPECT_EQ(s.nimber("0.0"), 0u);
  std::map<std::string, unsigned> memo;
  unsigned three = oracle::mex_nimber(canonical_string("0.0.0"), memo);
  EXPECT_GE(three, 1u);
  EXPECT_EQ(s.nimber("0.0.0"), three);
}

TEST(Outcome, SpotTableUpToFive) {
  const Outcome expected[] = {Outcome::Loss, Outcome::Loss, Outcome::Win, Outcome::Win, Outcome::Win};
  for (int n = 1; n <= 5; ++n) {
    NimberDatabase db;
    Solver s(db);
    EXPECT_EQ(s.outcome(spots_position(n)), expected[n - 1]) << n;
  }
}

TEST(Outcome, MatchesMinimaxOracleOnSmallTrees) {
  std::map<std::string, unsigned> memo;
  NimberDatabase db;
  Solver s(db);
  for (int n = 1; n <= 2; ++n)
    for (const auto& pos : oracle::reachable(n)) {
      unsigned g = oracle::mex_nimber(pos, memo);
      EXPECT_EQ(s.nimber(pos), g) << pos;
      EXPECT_EQ(s.outcome(pos, 0) == Outcome::Loss, g == 0) << pos;
      EXPECT_EQ(s.outcome(pos, g), Outcome::Loss) << pos;
    }
}

TEST(Outcome, ReductionSoundOnRawTrees) {
  for (int n = 1; n <= 2; ++n) {
    bool raw_win = oracle::raw_first_player_wins(parse_position(oracle::spots(n)));
    NimberDatabase db;
    Solver s(db);
    EXPECT_EQ(s.outcome(oracle::spots(n)) == Outcome::Win, raw_win) << n;
  }
}

TEST(SumRule, TwoLandNimberIsXor) {
  std::map<std::string, unsigned> memo;
  std::vector<std::string> lands;
  for (int n = 1; n <= 2; ++n)
    for (const auto& s : oracle::reachable(n))
      if (!s.empty() && s.find('+') == std::string::npos) lands.push_back(s);
  std::mt19937 rng(5);
  for (int k = 0; k < 15; ++k) {
    const auto& a = lands[rng() % lands.size()];
    const auto& b = lands[rng() % lands.size()];
    std::string composite = canonical_string(a + "+" + b);
    EXPECT_EQ(oracle::mex_nimber(composite, memo), oracle::mex_nimber(a, memo) ^ oracle::mex_nimber(b, memo))
        << composite;
  }
}

TEST(Order, OutcomeIndependentOfChildOrder) {
  for (int n = 2; n <= 4; ++n) {
    NimberDatabase db1, db2;
    Solver natural(db1);
    SolverOptions rev;
    rev.reverse_order = true;
    Solver reversed(db2, rev);
    EXPECT_EQ(natural.outcome(spots_position(n)), reversed.outcome(spots_position(n))) << n;
  }
}

TEST(Parallel, SameOutcomeWithFourWorkers) {
  for (int n = 1; n <= 4; ++n) {
    NimberDatabase db1, db4;
    Solver one(db1);
    SolverOptions o;
    o.threads = 4;
    Solver four(db4, o);
    EXPECT_EQ(one.outcome(spots_position(n)), four.outcome(spots_position(n))) << n;
    EXPECT_EQ(one.nimber(spots_position(n)), four.nimber(spots_position(n))) << n;
  }
}

TEST(Budget, NodeLimitIsAnError) {
  NimberDatabase db;
  SolverOptions o;
  o.limits.max_nodes = 5;
  Solver s(db, o);
  EXPECT_THROW(s.outcome(spots_position(5)), BudgetExceeded);
}

TEST(Database, StoredEntriesMatchOracle) {
  NimberDatabase db;
  Solver s(db);
  s.outcome(spots_position(3));
  std::map<std::string, unsigned> memo;
  std::size_t checked = 0;
  for (const auto& [land, k] : db.entries()) {
    if (land.size() > 12) continue;
    EXPECT_EQ(oracle::mex_nimber(land, memo), k) << land;
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Database, RoundTrip) {
  NimberDatabase db;
  db.store("0", 0);
  db.store("1a1a", 1);
  db.set_source("unit test");
  auto path = temp_file("roundtrip.db");
  db.save(path);
  NimberDatabase back;
  back.load(path);
  EXPECT_EQ(back.entries(), db.entries());
  EXPECT_EQ(back.source(), "unit test");
  EXPECT_FALSE(back.lookup("AB|AB").has_value());
  EXPECT_FALSE(back.store("0", 3));
  EXPECT_EQ(*back.lookup("0"), 0u);
}

TEST(Database, MalformedFileReportsLine) {
  auto path = temp_file("bad.db");
  {
    std::ofstream out(path);
    out << NimberDatabase::kHeader << "\n0\t0\nbroken line\n";
  }
  NimberDatabase db;
  try {
    db.load(path);
    FAIL();
  } catch (const DatabaseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  {
    std::ofstream out(path);
    out << "SPROUTS-NIMBER-DB 2\n";
  }
  EXPECT_THROW(db.load(path), DatabaseError);
}

TEST(Database, ImportRecanonizesKeys) {
  auto path = temp_file("glop.txt");
  {
    std::ofstream out(path);
    out << "# comment\n0.AB2C|BAC.1a1a2.0 0\nAB|AB 0\n";
  }
  NimberDatabase db;
  EXPECT_EQ(db.import_glop(path), 2u);
  EXPECT_TRUE(db.lookup(canonical_string("BAC.a21a1.0|0.C2AB")).has_value());
  EXPECT_TRUE(db.lookup("AB|AB").has_value());
}

TEST(Database, PreloadedLandNeedsNoExpansion) {
  NimberDatabase db;
  db.store("0", 0);
  Solver s(db);
  EXPECT_EQ(s.outcome("0", 0), Outcome::Loss);
  EXPECT_EQ(s.stats().expansions, 0u);
}

TEST(Tree, OneSpotCountIsStable) {
  auto a = count_tree(1);
  auto b = count_tree(1, 4);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.positions, oracle::reachable(1).size());
  EXPECT_EQ(count_tree(3).positions, count_tree(3, 3).positions);
}
