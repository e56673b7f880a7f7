#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sprouts/core/position.hpp"

namespace sprouts {

// Lexicographically smallest land string over region reversal, boundary
// rotation, boundary order, region order and letter relabeling. Regions and
// boundaries are first ordered by a key that ignores uppercase identities;
// ties are resolved by exhaustive search up to a node budget.
std::string canonical_land_string(const Position& reduced, const Land& land);

// Canonical lands sorted and joined with '+'. Input must come from reduce().
std::vector<std::string> pseudocanonical_lands(const Position& reduced);
std::string pseudocanonical_string(const Position& reduced);
std::string join_lands(const std::vector<std::string>& lands);
Position pseudocanonize(const Position& reduced);

// reduce() followed by pseudocanonical_string().
std::string canonical_string(const Position& p);
std::string canonical_string(std::string_view text);

void set_canonize_node_budget(std::size_t nodes);
std::size_t canonize_budget_hits();

}
