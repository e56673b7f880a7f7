#pragma once

#include <stdexcept>
#include <vector>

#include "sprouts/autodraw/mesh.hpp"

namespace sprouts::autodraw {

using Polyline = std::vector<Point>;

class RouteError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Shortest route inside `face` between two corners of different walks,
// through triangle centroids and midpoints of unconstrained edges.
Polyline shortest_path(const Mesh& mesh, const Topology& topo, const board::Board& board, int face, CornerRef from,
                       CornerRef to);

// Curve from corner `first` to corner `last` of walk `beta` that closes off
// the arc first..last together with the `enfolded` walks. With `reversed`
// the complementary arc last..first is closed off instead; the curve still
// runs from `first` to `last`. The curve is the boundary of a thin
// neighbourhood of the arc, the enfolded walks and a tree of shortest routes
// joining them.
Polyline enfold(const Mesh& mesh, const Topology& topo, const board::Board& board, int face, int beta, int first,
                int last, const std::vector<int>& enfolded, bool reversed);

// Replaces stretches of the path by straight chords that cross nothing,
// sweep over no vertex and keep `clearance` from small edges not incident
// to the end vertices `from` and `to`.
Polyline simplify(const board::Board& board, const Polyline& path, int from, int to, double clearance);

// Splits every segment longer than `step` into equal parts.
Polyline resample(const Polyline& path, double step);

double length(const Polyline& path);

}
