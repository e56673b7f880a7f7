#include "sprouts/core/reduce.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace sprouts {

namespace {

void delete_dead(Position& p) {
  for (auto& land : p.lands) {
    for (auto& region : land.regions) {
      for (auto& b : region.boundaries)
        std::erase_if(b, [&](VertexId v) { return p.lives(v) <= 0; });
      std::erase_if(region.boundaries, [](const Boundary& b) { return b.empty(); });
    }
    std::erase_if(land.regions, [&](const Region& r) { return !region_alive(p, r); });
  }
  std::erase_if(p.lands, [](const Land& l) { return l.regions.empty(); });
}

void merge_repeats(Position& p) {
  for (auto& land : p.lands)
    for (auto& region : land.regions)
      for (auto& b : region.boundaries) {
        Boundary out;
        out.reserve(b.size());
        for (VertexId v : b)
          if (out.empty() || out.back() != v) out.push_back(v);
        while (out.size() > 1 && out.front() == out.back()) out.pop_back();
        b = std::move(out);
      }
}

void split_lands(Position& p) {
  std::vector<Land> result;
  for (auto& land : p.lands) {
    const std::size_t n = land.regions.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::unordered_map<VertexId, std::size_t> owner;
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& b : land.regions[r].boundaries)
        for (VertexId v : b) {
          auto [it, fresh] = owner.emplace(v, r);
          if (!fresh) parent[find(r)] = find(it->second);
        }
    std::vector<std::size_t> slot(n, SIZE_MAX);
    std::size_t first = result.size();
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t root = find(r);
      if (slot[root] == SIZE_MAX) {
        slot[root] = result.size() - first;
        result.emplace_back();
      }
      result[first + slot[root]].regions.push_back(std::move(land.regions[r]));
    }
  }
  p.lands = std::move(result);
}

bool merge_small_regions(Position& p) {
  bool changed = false;
  for (auto& land : p.lands)
    for (auto& region : land.regions) {
      if (region.boundaries.size() < 2 || region_lives(p, region) > 3) continue;
      Boundary merged;
      for (const auto& b : region.boundaries) merged.insert(merged.end(), b.begin(), b.end());
      region.boundaries.assign(1, std::move(merged));
      changed = true;
    }
  return changed;
}

}

void apply_generic_names(Position& p) {
  struct Seen {
    int count = 0;
    std::size_t region = 0, boundary = 0;
    bool spans = false;
  };
  for (const auto& land : p.lands) {
    std::unordered_map<VertexId, Seen> seen;
    for (std::size_t r = 0; r < land.regions.size(); ++r)
      for (std::size_t b = 0; b < land.regions[r].boundaries.size(); ++b)
        for (VertexId v : land.regions[r].boundaries[b]) {
          auto [it, fresh] = seen.try_emplace(v);
          auto& s = it->second;
          if (fresh) {
            s.region = r;
            s.boundary = b;
          } else if (s.region != r || s.boundary != b) {
            s.spans = true;
          }
          ++s.count;
        }

    char next_upper = 'A';
    std::unordered_map<VertexId, bool> named;
    for (const auto& region : land.regions)
      for (const auto& b : region.boundaries) {
        char next_lower = 'a';
        for (VertexId v : b) {
          const auto& s = seen.at(v);
          if (named[v]) continue;
          named[v] = true;
          auto& info = p.vertex(v);
          if (s.count == 1 && info.lives >= 1) {
            info.name = static_cast<char>('0' + (3 - info.lives));
          } else if (s.count >= 2 && !s.spans) {
            if (next_lower > 'z')
              throw PositionError(PositionError::Kind::Invariant, 0, '\0', "more than 26 lowercase letters in a boundary");
            info.name = next_lower++;
          } else {
            if (next_upper > 'Z')
              throw PositionError(PositionError::Kind::Invariant, 0, '\0', "more than 26 uppercase letters in a land");
            info.name = next_upper++;
          }
        }
      }
  }
}

Position reduce(const Position& in, const ReduceOptions& options) {
  Position p = in;
  if (options.delete_dead) delete_dead(p);
  if (options.merge_repeats) merge_repeats(p);
  if (options.split_lands) split_lands(p);
  if (options.rename) apply_generic_names(p);
  if (options.merge_boundaries && merge_small_regions(p) && options.rename) apply_generic_names(p);
  return p;
}

}
