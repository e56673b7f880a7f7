#include "sprouts/solver/solver.hpp"

#include <algorithm>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sprouts/core/canonize.hpp"
#include "sprouts/core/moves.hpp"

namespace sprouts::solver {

const char* to_string(Outcome o) { return o == Outcome::Win ? "Win" : "Loss"; }

Nimber xor_merge(std::span<const Nimber> nimbers) {
  Nimber x = 0;
  for (Nimber n : nimbers) x ^= n;
  return x;
}

std::vector<std::string> split_lands(const std::string& canonical) {
  std::vector<std::string> out;
  if (canonical.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto plus = canonical.find('+', start);
    out.push_back(canonical.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

std::vector<std::string> order_children(std::vector<std::string> children) {
  auto key = [](const std::string& s) {
    return std::make_pair(std::count(s.begin(), s.end(), '+'), s.size());
  };
  std::sort(children.begin(), children.end(), [&](const std::string& a, const std::string& b) {
    auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a < b;
  });
  return children;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Cancelled {};

}

struct Solver::Shared {
  explicit Shared(NimberDatabase& d) : db(d) {}

  NimberDatabase& db;
  std::mutex win_mu;
  std::unordered_set<std::string> wins;
  std::atomic<std::uint64_t> expansions{0};
  std::atomic<std::uint64_t> db_hits{0};
  std::atomic<std::uint64_t> win_hits{0};
  std::atomic<bool> cancel{false};
  Clock::time_point start;

  bool known_win(const std::string& key) {
    std::lock_guard lock(win_mu);
    return wins.count(key) > 0;
  }
  void add_win(std::string key) {
    std::lock_guard lock(win_mu);
    if (wins.size() > (std::size_t{1} << 22)) wins.clear();
    wins.insert(std::move(key));
  }
};

namespace {

class Worker {
public:
  Worker(Solver::Shared& sh, const SolverOptions& opt, bool cancellable)
      : sh_(sh), opt_(opt), cancellable_(cancellable) {}

  // Lands with known nimbers are folded into the heap, pairs of equal lands
  // cancel, and all unknown lands but the longest are solved outright.
  std::pair<std::string, Nimber> simplify(std::vector<std::string> lands, Nimber heap) {
    std::sort(lands.begin(), lands.end());
    std::vector<std::string> unknown;
    for (std::size_t i = 0; i < lands.size(); ++i) {
      if (i + 1 < lands.size() && lands[i] == lands[i + 1]) {
        ++i;
        continue;
      }
      if (auto k = sh_.db.lookup(lands[i])) {
        ++sh_.db_hits;
        heap ^= *k;
      } else {
        unknown.push_back(std::move(lands[i]));
      }
    }
    if (unknown.empty()) return {std::string(), heap};
    auto residual = std::max_element(unknown.begin(), unknown.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a > b;
    });
    for (auto it = unknown.begin(); it != unknown.end(); ++it)
      if (it != residual) heap ^= nimber_of_land(*it);
    return {*residual, heap};
  }

  Outcome outcome(const std::vector<std::string>& lands, Nimber heap) {
    auto [land, h] = simplify(lands, heap);
    if (land.empty()) return h == 0 ? Outcome::Loss : Outcome::Win;
    return residual(land, h);
  }

  Nimber nimber_of_land(const std::string& land) {
    if (auto k = sh_.db.lookup(land)) return *k;
    for (Nimber n = 0;; ++n)
      if (residual(land, n) == Outcome::Loss) return n;
  }

  Outcome residual(const std::string& land, Nimber heap) {
    if (auto k = sh_.db.lookup(land)) {
      ++sh_.db_hits;
      return *k == heap ? Outcome::Loss : Outcome::Win;
    }
    std::string key = land + '#' + std::to_string(heap);
    if (sh_.known_win(key)) {
      ++sh_.win_hits;
      return Outcome::Win;
    }
    expand_check();
    for (Nimber m = 0; m < heap; ++m)
      if (residual(land, m) == Outcome::Loss) {
        sh_.add_win(std::move(key));
        return Outcome::Win;
      }
    auto kids = children(land);
    for (const auto& child : *kids)
      if (known_loss(split_lands(child), heap)) {
        sh_.add_win(std::move(key));
        return Outcome::Win;
      }
    for (const auto& child : *kids)
      if (outcome(split_lands(child), heap) == Outcome::Loss) {
        sh_.add_win(std::move(key));
        return Outcome::Win;
      }
    sh_.db.store(land, heap);
    return Outcome::Loss;
  }

  // Decides the couple from the database alone, without any expansion.
  bool known_loss(std::vector<std::string> lands, Nimber heap) const {
    std::sort(lands.begin(), lands.end());
    for (std::size_t i = 0; i < lands.size(); ++i) {
      if (i + 1 < lands.size() && lands[i] == lands[i + 1]) {
        ++i;
        continue;
      }
      auto k = sh_.db.lookup(lands[i]);
      if (!k) return false;
      heap ^= *k;
    }
    return heap == 0;
  }

  std::shared_ptr<const std::vector<std::string>> children(const std::string& land) {
    if (auto it = kids_.find(land); it != kids_.end()) return it->second;
    auto kids = order_children(children_strings(land));
    if (opt_.reverse_order) std::reverse(kids.begin(), kids.end());
    if (kids_.size() > (std::size_t{1} << 16)) kids_.clear();
    auto ptr = std::make_shared<const std::vector<std::string>>(std::move(kids));
    kids_.emplace(land, ptr);
    return ptr;
  }

private:
  void expand_check() {
    auto n = ++sh_.expansions;
    if (cancellable_ && sh_.cancel.load(std::memory_order_relaxed)) throw Cancelled{};
    const auto& lim = opt_.limits;
    if (lim.max_nodes && n > lim.max_nodes)
      throw BudgetExceeded("node budget of " + std::to_string(lim.max_nodes) + " exceeded", snapshot());
    if (lim.time_limit.count() && (n & 63) == 0 && Clock::now() - sh_.start > lim.time_limit)
      throw BudgetExceeded("time limit exceeded", snapshot());
  }

  SolveStats snapshot() const { return {sh_.expansions.load(), sh_.db_hits.load(), sh_.win_hits.load()}; }

  Solver::Shared& sh_;
  const SolverOptions& opt_;
  bool cancellable_;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<std::string>>> kids_;
};

}

Solver::Solver(NimberDatabase& db, SolverOptions options)
    : shared_(std::make_unique<Shared>(db)), options_(options) {
  if (options_.threads == 0) options_.threads = 1;
}

Solver::~Solver() = default;

Outcome Solver::outcome(const std::string& position, Nimber heap) {
  shared_->start = Clock::now();
  shared_->cancel = false;
  auto lands = split_lands(canonical_string(position));
  Worker root(*shared_, options_, false);
  if (options_.threads == 1) return root.outcome(lands, heap);

  auto [land, h] = root.simplify(lands, heap);
  if (land.empty()) return h == 0 ? Outcome::Loss : Outcome::Win;
  if (auto k = shared_->db.lookup(land)) return *k == h ? Outcome::Loss : Outcome::Win;

  struct Task {
    std::vector<std::string> lands;
    Nimber heap;
  };
  std::vector<Task> tasks;
  for (Nimber m = 0; m < h; ++m) tasks.push_back({{land}, m});
  for (auto& c : *root.children(land)) tasks.push_back({split_lands(c), h});

  std::atomic<std::size_t> next{0};
  std::atomic<bool> found{false};
  std::mutex err_mu;
  std::exception_ptr error;
  auto work = [&] {
    Worker w(*shared_, options_, true);
    try {
      for (std::size_t i; (i = next++) < tasks.size();) {
        if (w.outcome(tasks[i].lands, tasks[i].heap) == Outcome::Loss) {
          found = true;
          shared_->cancel = true;
          return;
        }
      }
    } catch (const Cancelled&) {
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!error) error = std::current_exception();
      shared_->cancel = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < options_.threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  shared_->cancel = false;
  if (found) {
    shared_->add_win(land + '#' + std::to_string(h));
    return Outcome::Win;
  }
  if (error) std::rethrow_exception(error);
  shared_->db.store(land, h);
  return Outcome::Loss;
}

Nimber Solver::nimber(const std::string& position) {
  for (Nimber n = 0;; ++n)
    if (outcome(position, n) == Outcome::Loss) return n;
}

SolveStats Solver::stats() const {
  return {shared_->expansions.load(), shared_->db_hits.load(), shared_->win_hits.load()};
}

void Solver::reset_stats() {
  shared_->expansions = 0;
  shared_->db_hits = 0;
  shared_->win_hits = 0;
}

}
