#pragma once

#include "sprouts/core/position.hpp"

namespace sprouts {

struct ReduceOptions {
  bool delete_dead = true;
  bool merge_repeats = true;
  bool split_lands = true;
  bool rename = true;
  bool merge_boundaries = true;
};

// One pass of: delete dead parts, generic names, split lands, rename letters,
// merge boundaries of regions with at most three lives. Vertex ids are kept.
Position reduce(const Position& p, const ReduceOptions& options = {});

// Reassigns every vertex name from the structure: digits by lives for single
// occurrences, lowercase per boundary, uppercase per land, in reading order.
void apply_generic_names(Position& p);

}
