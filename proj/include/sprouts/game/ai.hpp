#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sprouts/solver/solver.hpp"

namespace sprouts::game {

enum class AiLevel { Perfect, Strong, Medium, Weak };

const char* to_string(AiLevel level);
// Throws std::invalid_argument on unknown names.
AiLevel parse_level(std::string_view name);

struct AiOptions {
  AiLevel level = AiLevel::Perfect;
  std::uint64_t seed = 1;
  solver::Limits perfect_budget{};  // unlimited
  solver::Limits strong_budget{.max_nodes = 200000, .time_limit = std::chrono::milliseconds{2000}};
};

struct AiChoice {
  std::size_t index = 0;  // into the children passed to choose()
  AiLevel played = AiLevel::Perfect;
  bool fell_back = false;
  std::string note;
};

// Picks one of the children of the current position. The children are the
// canonical strings of the moves available on the actual board.
class Ai {
public:
  Ai(solver::NimberDatabase& db, AiOptions options = {});

  AiChoice choose(const std::vector<std::string>& children);

  AiLevel level() const { return options_.level; }

private:
  AiChoice perfect(const std::vector<std::string>& children, const solver::Limits& limits, AiLevel level);
  AiChoice medium(const std::vector<std::string>& children);

  solver::NimberDatabase& db_;
  AiOptions options_;
  std::mt19937_64 rng_;
};

}
