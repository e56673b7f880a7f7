#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprouts/solver/database.hpp"

namespace sprouts::solver {

enum class Outcome { Win, Loss };

const char* to_string(Outcome o);

Nimber xor_merge(std::span<const Nimber> nimbers);

// Fewer lands first, then shorter strings, then lexicographic order.
std::vector<std::string> order_children(std::vector<std::string> children);

std::vector<std::string> split_lands(const std::string& canonical);

struct Limits {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  std::chrono::milliseconds time_limit{0};  // 0 = unlimited
};

struct SolveStats {
  std::uint64_t expansions = 0;
  std::uint64_t db_hits = 0;
  std::uint64_t win_cache_hits = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, SolveStats stats) : std::runtime_error(what), stats_(stats) {}
  const SolveStats& stats() const { return stats_; }

private:
  SolveStats stats_;
};

struct SolverOptions {
  Limits limits;
  unsigned threads = 1;
  bool reverse_order = false;  // examine children in reverse priority
};

// Couple search over (position, heap) pairs. Losing couples of single lands
// go to the shared database; winning couples are kept in memory only.
class Solver {
public:
  explicit Solver(NimberDatabase& db, SolverOptions options = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Outcome outcome(const std::string& position, Nimber heap = 0);
  Nimber nimber(const std::string& position);

  SolveStats stats() const;
  void reset_stats();

  struct Shared;

private:
  std::unique_ptr<Shared> shared_;
  SolverOptions options_;
};

}
