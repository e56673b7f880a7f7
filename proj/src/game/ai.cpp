#include "sprouts/game/ai.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sprouts/core/moves.hpp"

namespace sprouts::game {

using solver::Outcome;

const char* to_string(AiLevel level) {
  switch (level) {
    case AiLevel::Perfect: return "perfect";
    case AiLevel::Strong: return "strong";
    case AiLevel::Medium: return "medium";
    case AiLevel::Weak: return "weak";
  }
  return "?";
}

AiLevel parse_level(std::string_view name) {
  for (auto l : {AiLevel::Perfect, AiLevel::Strong, AiLevel::Medium, AiLevel::Weak})
    if (name == to_string(l)) return l;
  throw std::invalid_argument("unknown AI level: " + std::string(name));
}

Ai::Ai(solver::NimberDatabase& db, AiOptions options) : db_(db), options_(options), rng_(options.seed) {}

AiChoice Ai::choose(const std::vector<std::string>& children) {
  if (children.empty()) throw std::invalid_argument("no move to choose from");
  if (children.size() == 1) return {0, options_.level, false, "only move"};
  switch (options_.level) {
    case AiLevel::Perfect:
      try {
        return perfect(children, options_.perfect_budget, AiLevel::Perfect);
      } catch (const solver::BudgetExceeded& e) {
        try {
          auto c = perfect(children, options_.strong_budget, AiLevel::Strong);
          c.fell_back = true;
          c.note = std::string("perfect search: ") + e.what();
          return c;
        } catch (const solver::BudgetExceeded&) {
          auto c = medium(children);
          c.fell_back = true;
          c.note = std::string("perfect search: ") + e.what();
          return c;
        }
      }
    case AiLevel::Strong:
      try {
        return perfect(children, options_.strong_budget, AiLevel::Strong);
      } catch (const solver::BudgetExceeded& e) {
        auto c = medium(children);
        c.fell_back = true;
        c.note = std::string("strong search: ") + e.what();
        return c;
      }
    case AiLevel::Medium: return medium(children);
    case AiLevel::Weak: return {static_cast<std::size_t>(rng_() % children.size()), AiLevel::Weak, false, ""};
  }
  return {};
}

// A losing child if there is one, cheapest to prove first; otherwise the
// child whose own children are most often losing.
AiChoice Ai::perfect(const std::vector<std::string>& children, const solver::Limits& limits, AiLevel level) {
  solver::Solver s(db_, {.limits = limits, .threads = 1, .reverse_order = false});
  std::size_t best = children.size();
  std::uint64_t best_nodes = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < children.size(); ++i) {
    std::uint64_t before = s.stats().expansions;
    if (s.outcome(children[i]) == Outcome::Loss) {
      std::uint64_t nodes = s.stats().expansions - before;
      if (nodes < best_nodes) {
        best = i;
        best_nodes = nodes;
      }
    }
  }
  if (best < children.size()) return {best, level, false, "winning move"};

  double best_ratio = -1;
  for (std::size_t i = 0; i < children.size(); ++i) {
    auto grand = children_strings(children[i]);
    std::size_t losing = 0;
    for (const auto& g : grand) losing += s.outcome(g) == Outcome::Loss;
    double ratio = grand.empty() ? 0 : static_cast<double>(losing) / static_cast<double>(grand.size());
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  return {best, level, false, "losing position"};
}

// Two plies: finish the game when possible, never leave a finishing reply,
// otherwise leave the opponent the fewest finishing chances two plies on.
AiChoice Ai::medium(const std::vector<std::string>& children) {
  std::vector<std::size_t> order(children.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng_);
  std::size_t best = order.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    auto grand = children_strings(children[i]);
    double score;
    if (grand.empty()) {
      score = 2;
    } else {
      std::size_t finishing = 0;
      for (const auto& g : grand) finishing += children_strings(g).empty();
      score = finishing ? -1 - static_cast<double>(finishing) / static_cast<double>(grand.size())
                        : -static_cast<double>(grand.size()) / 1e6;
    }
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return {best, AiLevel::Medium, false, ""};
}

}
