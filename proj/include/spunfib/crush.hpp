#pragma once

#include <vector>

#include "spunfib/normal.hpp"

namespace spunfib {

// Cells of the decomposition C_X induced on the closure X of the vertex-free
// complement component of a closed normal surface.
enum class CellKind { TruncatedTetrahedron, TruncatedPrism, TriangleBlock, QuadBlock };

// A maximal run of truncated prisms joined through their hexagonal faces,
// walked between two truncated-tetrahedron faces.  perm maps the vertex
// labels of from.tet to those of to.tet; crushing glues the two faces by it.
struct Chain {
    FaceSlot from, to;
    Perm4 perm;
    std::vector<int> prisms; // tets of the traversed prisms, in walk order
};

// One component of the product part P(C_X): vertical edges, trapezoids and
// blocks.  For a trivial combinatorial product the component meets the
// surface in two pieces, each simply connected (chi = 1).
struct ProductPiece {
    std::vector<long long> side_chis; // chi of each component of the piece cap S
};

struct CellDecomposition {
    std::vector<std::vector<CellKind>> cells; // cells of C_X per tetrahedron
    std::vector<int> core_tets;               // truncated-tetrahedron tets, ascending
    std::vector<Chain> chains;                // empty prism list = direct face gluing
    bool simple = true;                       // no circular Gamma component
    bool trivial_product = true;
    std::vector<ProductPiece> product_pieces;
};

// Builds C_X for the unique complement component X containing no vertex.
// Throws if the surface is not closed, not admissible, fails matching, or if
// the vertex-free component is missing or ambiguous.
CellDecomposition decompose_complement(const Triangulation& tri, const StandardVector& surface);

struct CrushResult {
    Triangulation ideal;
    std::vector<int> core_tets; // output index -> input tet, ascending
    std::vector<int> tet_map;   // input tet -> output index, -1 if crushed away
};

// Crushes tri along a closed normal surface: truncated tetrahedra become the
// ideal tetrahedra, chains of prisms become face identifications.  Throws if
// C_X is not simple, P(C_X) is not a trivial combinatorial product, X has no
// truncated tetrahedron, or the result fails to validate as a one-vertex
// ideal triangulation.
CrushResult crush_along(const Triangulation& tri, const StandardVector& surface);

} // namespace spunfib
