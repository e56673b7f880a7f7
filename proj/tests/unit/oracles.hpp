#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. They deliberately avoid the solver and the couple machinery.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sprouts/core/canonize.hpp"
#include "sprouts/core/moves.hpp"

namespace oracle {

// Grundy value by plain mex recursion over canonical children.
inline unsigned mex_nimber(const std::string& canonical, std::map<std::string, unsigned>& memo) {
  if (auto it = memo.find(canonical); it != memo.end()) return it->second;
  std::set<unsigned> seen;
  for (const auto& c : sprouts::children_strings(canonical)) seen.insert(mex_nimber(c, memo));
  unsigned m = 0;
  while (seen.count(m)) ++m;
  return memo[canonical] = m;
}

// Every legal move over every occurrence pair and every subset of the other
// boundaries, without singleton grouping or any reduction.
inline std::vector<sprouts::Position> raw_successors(const sprouts::Position& p) {
  using namespace sprouts;
  std::vector<Position> out;
  for (std::size_t l = 0; l < p.lands.size(); ++l)
    for (std::size_t r = 0; r < p.lands[l].regions.size(); ++r) {
      const auto& bs = p.lands[l].regions[r].boundaries;
      for (std::size_t a = 0; a < bs.size(); ++a)
        for (std::size_t i = 0; i < bs[a].size(); ++i)
          for (std::size_t b = a; b < bs.size(); ++b)
            for (std::size_t j = 0; j < bs[b].size(); ++j) {
              MoveDescriptor m;
              m.land = l;
              m.region = r;
              m.from = {a, i};
              m.to = {b, j};
              std::vector<std::vector<std::size_t>> partitions = {{}};
              if (a == b) {
                if (j < i) continue;
                m.kind = MoveKind::SingleBoundary;
                std::vector<std::size_t> others;
                for (std::size_t k = 0; k < bs.size(); ++k)
                  if (k != a) others.push_back(k);
                partitions.clear();
                for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
                  std::vector<std::size_t> major;
                  for (std::size_t t = 0; t < others.size(); ++t)
                    if (mask >> t & 1) major.push_back(others[t]);
                  partitions.push_back(major);
                }
              } else {
                m.kind = MoveKind::DoubleBoundary;
              }
              for (auto& major : partitions) {
                m.major = major;
                try {
                  out.push_back(apply_move(p, m));
                } catch (const IllegalMove&) {
                }
              }
            }
    }
  return out;
}

// Normal-play outcome on the unreduced tree: true when the mover wins.
inline bool raw_first_player_wins(const sprouts::Position& p) {
  for (const auto& q : raw_successors(p))
    if (!raw_first_player_wins(q)) return true;
  return false;
}

inline std::string spots(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += i ? ".0" : "0";
  return s;
}

// Canonical positions reachable from the n-spot start.
inline std::set<std::string> reachable(int n) {
  std::set<std::string> seen;
  std::vector<std::string> stack = {sprouts::canonical_string(spots(n))};
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    for (auto& c : sprouts::children_strings(s)) stack.push_back(c);
  }
  return seen;
}

}
