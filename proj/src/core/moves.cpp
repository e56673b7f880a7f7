#include "sprouts/core/moves.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sprouts/core/canonize.hpp"
#include "sprouts/core/reduce.hpp"

namespace sprouts {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

bool is_singleton(const Position& p, const Boundary& b) { return b.size() == 1 && p.lives(b[0]) == 3; }

bool is_dead(const Position& p, const Boundary& b) {
  return std::all_of(b.begin(), b.end(), [&](VertexId v) { return p.lives(v) <= 0; });
}

std::array<bool, 26> used_upper(const Position& p, const Land& land) {
  std::array<bool, 26> used{};
  for (const auto& r : land.regions)
    for (const auto& b : r.boundaries)
      for (VertexId v : b)
        if (char c = p.vertex(v).name; is_upper(c)) used[c - 'A'] = true;
  return used;
}

// Renames vertices whose token no longer matches their occurrence pattern.
void repair_names(Position& p, const Land& land) {
  struct Seen { int count = 0; const Boundary* where = nullptr; bool spans = false; };
  std::unordered_map<VertexId, Seen> seen;
  for (const auto& r : land.regions)
    for (const auto& b : r.boundaries)
      for (VertexId v : b) {
        auto& s = seen[v];
        if (s.where && s.where != &b) s.spans = true;
        s.where = &b;
        ++s.count;
      }
  std::set<VertexId> bad;
  for (const auto& [v, s] : seen) {
    const auto& info = p.vertex(v);
    if (info.name >= '0' && info.name <= '2') {
      if (s.count != 1 || info.lives < 1 || info.name != '0' + (3 - info.lives)) bad.insert(v);
    } else if (is_lower(info.name)) {
      if (s.spans || s.count < 2) bad.insert(v);
    }
  }
  for (const auto& r : land.regions)
    for (const auto& b : r.boundaries) {
      std::map<char, VertexId> owner;
      for (VertexId v : b) {
        char c = p.vertex(v).name;
        if (!is_lower(c) || bad.count(v)) continue;
        auto [it, fresh] = owner.emplace(c, v);
        if (!fresh && it->second != v) bad.insert(v);
      }
    }
  if (bad.empty()) return;
  auto used = used_upper(p, land);
  for (VertexId v : bad) {
    auto it = std::find(used.begin(), used.end(), false);
    if (it == used.end())
      throw PositionError(PositionError::Kind::Invariant, 0, '\0', "more than 26 uppercase letters in a land");
    *it = true;
    p.vertex(v).name = static_cast<char>('A' + (it - used.begin()));
  }
}

}

void check_move(const Position& p, const MoveDescriptor& m) {
  if (m.land >= p.lands.size()) throw IllegalMove("land index out of range");
  const auto& land = p.lands[m.land];
  if (m.region >= land.regions.size()) throw IllegalMove("region index out of range");
  const auto& bs = land.regions[m.region].boundaries;
  if (m.from.boundary >= bs.size() || m.to.boundary >= bs.size()) throw IllegalMove("boundary index out of range");
  if (m.from.index >= bs[m.from.boundary].size() || m.to.index >= bs[m.to.boundary].size())
    throw IllegalMove("occurrence index out of range");
  VertexId a = bs[m.from.boundary][m.from.index];
  VertexId b = bs[m.to.boundary][m.to.index];
  if (m.kind == MoveKind::DoubleBoundary) {
    if (m.from.boundary == m.to.boundary) throw IllegalMove("double-boundary move needs two boundaries");
    if (!m.major.empty()) throw IllegalMove("double-boundary move takes no partition");
  } else {
    if (m.from.boundary != m.to.boundary) throw IllegalMove("single-boundary move needs one boundary");
    if (m.from.index > m.to.index) throw IllegalMove("occurrences must be ordered");
    std::set<std::size_t> seen;
    for (std::size_t k : m.major) {
      if (k >= bs.size() || k == m.from.boundary || !seen.insert(k).second)
        throw IllegalMove("invalid boundary partition");
    }
  }
  if (a == b) {
    if (p.lives(a) < 2) throw IllegalMove("connecting a vertex to itself needs two lives");
  } else if (p.lives(a) < 1 || p.lives(b) < 1) {
    throw IllegalMove("endpoint has no lives");
  }
}

ApplyResult apply_move_ex(const Position& p, const MoveDescriptor& m) {
  check_move(p, m);
  ApplyResult res;
  res.position = p;
  Position& q = res.position;
  Land& land = q.lands[m.land];
  auto& bs = land.regions[m.region].boundaries;

  auto used = used_upper(q, land);
  char znam = 'Z';
  while (znam >= 'A' && used[znam - 'A']) --znam;
  if (znam < 'A') throw PositionError(PositionError::Kind::Invariant, 0, '\0', "more than 26 uppercase letters in a land");
  const VertexId z = q.add_vertex(1, znam);
  res.new_vertex = z;

  VertexId va = bs[m.from.boundary][m.from.index];
  VertexId vb = bs[m.to.boundary][m.to.index];
  q.vertex(va).lives -= 1;
  q.vertex(vb).lives -= 1;

  const std::size_t i = m.from.index, j = m.to.index;
  if (m.kind == MoveKind::DoubleBoundary) {
    const Boundary A = bs[m.from.boundary];
    const Boundary B = bs[m.to.boundary];
    Boundary merged;
    merged.reserve(A.size() + B.size() + 4);
    merged.insert(merged.end(), A.begin(), A.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    merged.push_back(z);
    merged.insert(merged.end(), B.begin() + static_cast<std::ptrdiff_t>(j), B.end());
    merged.insert(merged.end(), B.begin(), B.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    merged.push_back(z);
    merged.insert(merged.end(), A.begin() + static_cast<std::ptrdiff_t>(i), A.end());
    bs[m.from.boundary] = std::move(merged);
    bs.erase(bs.begin() + static_cast<std::ptrdiff_t>(m.to.boundary));
    res.major_region = res.minor_region = m.region;
  } else {
    const Boundary A = bs[m.from.boundary];
    Boundary major_walk(A.begin() + static_cast<std::ptrdiff_t>(i), A.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    major_walk.push_back(z);
    Boundary minor_walk(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    minor_walk.push_back(z);
    minor_walk.insert(minor_walk.end(), A.begin() + static_cast<std::ptrdiff_t>(j), A.end());
    Region major, minor;
    major.boundaries.push_back(std::move(major_walk));
    minor.boundaries.push_back(std::move(minor_walk));
    for (std::size_t k = 0; k < bs.size(); ++k) {
      if (k == m.from.boundary) continue;
      bool in_major = std::find(m.major.begin(), m.major.end(), k) != m.major.end();
      (in_major ? major : minor).boundaries.push_back(bs[k]);
    }
    land.regions[m.region] = std::move(major);
    land.regions.push_back(std::move(minor));
    res.major_region = m.region;
    res.minor_region = land.regions.size() - 1;
  }
  repair_names(q, land);
  return res;
}

Position apply_move(const Position& p, const MoveDescriptor& m) { return apply_move_ex(p, m).position; }

std::vector<MoveDescriptor> enumerate_moves(const Position& p, const EnumerateOptions& options) {
  std::vector<MoveDescriptor> moves;
  for (std::size_t l = 0; l < p.lands.size(); ++l) {
    const auto& land = p.lands[l];
    for (std::size_t r = 0; r < land.regions.size(); ++r) {
      const auto& bs = land.regions[r].boundaries;
      if (!region_alive(p, land.regions[r])) continue;
      std::vector<std::size_t> singles;
      for (std::size_t b = 0; b < bs.size(); ++b)
        if (is_singleton(p, bs[b])) singles.push_back(b);
      // Singletons are interchangeable: pair the first two with each other and
      // only the first with anything else.
      auto pair_allowed = [&](std::size_t a, std::size_t b) {
        bool sa = is_singleton(p, bs[a]), sb = is_singleton(p, bs[b]);
        if (sa && sb) return a == singles[0] && b == singles[1];
        if (sa) return a == singles[0];
        if (sb) return b == singles[0];
        return true;
      };

      for (std::size_t a = 0; a < bs.size(); ++a) {
        for (std::size_t b = a + 1; b < bs.size(); ++b) {
          if (!pair_allowed(a, b)) continue;
          for (std::size_t i = 0; i < bs[a].size(); ++i) {
            if (p.lives(bs[a][i]) < 1) continue;
            for (std::size_t j = 0; j < bs[b].size(); ++j) {
              if (p.lives(bs[b][j]) < 1) continue;
              moves.push_back({MoveKind::DoubleBoundary, l, r, {a, i}, {b, j}, {}});
            }
          }
        }
      }

      for (std::size_t b = 0; b < bs.size(); ++b) {
        if (is_singleton(p, bs[b]) && b != singles[0]) continue;
        std::vector<std::size_t> free_bs, other_singles;
        for (std::size_t k = 0; k < bs.size(); ++k) {
          if (k == b) continue;
          if (is_singleton(p, bs[k])) other_singles.push_back(k);
          else if (!(options.dead_boundaries_minor && is_dead(p, bs[k]))) free_bs.push_back(k);
        }
        if (free_bs.size() >= 63 || (std::size_t{1} << free_bs.size()) > options.max_subsets)
          throw PartitionOverflow("too many boundaries to partition in one region");
        const std::size_t subsets = std::size_t{1} << free_bs.size();
        const auto& walk = bs[b];
        for (std::size_t i = 0; i < walk.size(); ++i) {
          for (std::size_t j = i; j < walk.size(); ++j) {
            VertexId u = walk[i], v = walk[j];
            if (u == v ? p.lives(u) < 2 : (p.lives(u) < 1 || p.lives(v) < 1)) continue;
            for (std::size_t mask = 0; mask < subsets; ++mask) {
              std::vector<std::size_t> major;
              for (std::size_t t = 0; t < free_bs.size(); ++t)
                if (mask >> t & 1) major.push_back(free_bs[t]);
              for (std::size_t c = 0; c <= other_singles.size(); ++c) {
                auto m = major;
                m.insert(m.end(), other_singles.begin(), other_singles.begin() + static_cast<std::ptrdiff_t>(c));
                std::sort(m.begin(), m.end());
                moves.push_back({MoveKind::SingleBoundary, l, r, {b, i}, {b, j}, std::move(m)});
              }
            }
          }
        }
      }
    }
  }
  return moves;
}

std::vector<Child> enumerate_children(const Position& p, const EnumerateOptions& options) {
  std::vector<std::vector<std::string>> land_canon(p.lands.size());
  for (std::size_t l = 0; l < p.lands.size(); ++l) {
    Position sub{{p.lands[l]}, p.vertices};
    land_canon[l] = pseudocanonical_lands(reduce(sub));
  }
  std::map<std::string, MoveDescriptor> found;
  for (auto& m : enumerate_moves(p, options)) {
    ApplyResult res = apply_move_ex(p, m);
    Position sub{{std::move(res.position.lands[m.land])}, std::move(res.position.vertices)};
    std::vector<std::string> parts = pseudocanonical_lands(reduce(sub));
    for (std::size_t l = 0; l < p.lands.size(); ++l)
      if (l != m.land) parts.insert(parts.end(), land_canon[l].begin(), land_canon[l].end());
    std::sort(parts.begin(), parts.end());
    found.try_emplace(join_lands(parts), std::move(m));
  }
  std::vector<Child> out;
  out.reserve(found.size());
  for (auto& [s, m] : found) out.push_back({std::move(m), s});
  return out;
}

std::vector<std::string> children_strings(const Position& p) {
  std::vector<std::string> out;
  for (auto& c : enumerate_children(p)) out.push_back(std::move(c.canonical));
  return out;
}

std::vector<std::string> children_strings(const std::string& canonical) {
  return children_strings(parse_position(canonical));
}

std::string describe(const MoveDescriptor& m) {
  std::ostringstream os;
  os << (m.kind == MoveKind::DoubleBoundary ? "double" : "single") << " land " << m.land << " region " << m.region
     << " (" << m.from.boundary << ':' << m.from.index << ")-(" << m.to.boundary << ':' << m.to.index << ')';
  if (m.kind == MoveKind::SingleBoundary) {
    os << " major{";
    for (std::size_t i = 0; i < m.major.size(); ++i) os << (i ? "," : "") << m.major[i];
    os << '}';
  }
  return os.str();
}

}
