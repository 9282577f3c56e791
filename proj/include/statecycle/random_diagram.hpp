#ifndef STATECYCLE_RANDOM_DIAGRAM_HPP
#define STATECYCLE_RANDOM_DIAGRAM_HPP

#include <cstdint>
#include <random>

#include "statecycle/diagram.hpp"

namespace statecycle {

struct RandomDiagramOptions {
    int min_crossings = 1;
    int max_crossings = 10;
    int grid = 12;          // vertex coordinates in [0, grid]
    int min_vertices = 4;
    int max_vertices = 8;
};

// A knot diagram from a random closed lattice polygon with random
// over/under choices. Polygons in non-general position, or with a crossing
// count outside the requested range, are redrawn.
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& options = {});
Diagram random_diagram(std::uint64_t seed, const RandomDiagramOptions& options = {});

}  // namespace statecycle

#endif  // STATECYCLE_RANDOM_DIAGRAM_HPP
