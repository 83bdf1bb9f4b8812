#pragma once

#include <array>
#include <vector>

#include "spunfib/normal.hpp"

namespace spunfib {

// An extreme ray of {x >= 0 : Ax = 0}, scaled to the smallest integer lattice
// point on the ray.
struct RayBasis {
    std::vector<Int> vec;     // content 1
    std::vector<int> support; // sorted indices of nonzero coordinates

    bool operator==(const RayBasis& o) const { return vec == o.vec; }
};

struct VertexSolutionSet {
    std::vector<RayBasis> rays; // sorted by support, then by vector
};

// Column triples holding each tetrahedron's quad coordinates.
using QuadBlocks = std::vector<std::array<int, 3>>;
QuadBlocks standard_quad_blocks(int n_tets);
QuadBlocks quad_quad_blocks(int n_tets);

// Admissible extreme rays by incremental double description.  Intermediate
// rays whose support already holds two quad types of one block are discarded:
// supports only grow under the combination step, so no admissible extreme ray
// descends from them.
VertexSolutionSet enumerate_vertex_solutions(const MatchingSystem& system,
                                             const QuadBlocks& blocks);

// Independent oracle: exhaustive search over admissible non-negative integer
// vectors with entries <= bound, reduced to content-1 support-minimal rays.
VertexSolutionSet brute_force_rays(const MatchingSystem& system, const QuadBlocks& blocks,
                                   long bound);

// The unique standard solution with the given quad coordinates and minimal
// triangle coordinates (triangle counts are determined by the arc-matching
// differences up to one vertex-link multiple per vertex class; the canonical
// choice makes the minimum over each class zero).  Throws if the quad vector
// admits no triangle completion.
StandardVector canonical_extension(const Triangulation& tri, const QuadVector& q);

// All admissible sums of at most max_terms vertex solutions (with repetition),
// in deterministic order: by term count, then lexicographically by the chosen
// ray indices.
std::vector<std::vector<Int>> candidate_sums(const VertexSolutionSet& vertices,
                                             const QuadBlocks& blocks, int max_terms);

} // namespace spunfib
