#pragma once

#include <array>
#include <utility>
#include <vector>

#include "spunfib/crush.hpp"
#include "spunfib/normal.hpp"

namespace spunfib {

// A frame of a torus vertex link: a minimal spine, i.e. a subgraph of the
// link's 1-skeleton whose complement is a single open disc, with no degree-1
// vertices.  Either one branch point of index four with two branches, or two
// branch points of index three with three branches.
struct BranchPoint {
    int link_vertex;
    int index; // degree in the frame
};

struct Frame {
    std::vector<int> edges; // link edge ids, sorted ascending
    std::vector<BranchPoint> branch_points;
    std::vector<std::vector<int>> branches; // edge paths between branch points
};

// All frames of the link of the given (ideal, torus-linked) vertex class,
// sorted by edge count then lexicographically.
std::vector<Frame> find_frames(const Skeleton& sk, int vertex_class);

enum class Role { Core, Band, Crossing, BranchPoint };

struct InflationStructure {
    std::vector<Role> roles;
    StandardVector linking; // the boundary-linking surface
    // quad type of the linking surface per tetrahedron, -1 where it has none
    std::vector<int> quad_types;
    // per band tetrahedron the two trapezoid-carrying faces, {-1,-1} otherwise
    std::vector<std::array<int, 2>> trapezoid_faces;
    int bands = 0, crossings = 0;
    int length = 0; // bands + 2 * crossings
    std::vector<Chain> chains;
    std::vector<std::vector<int>> branches; // band subcomplexes, ascending tets
};

// Reconstructs the inflation structure of a material triangulation with
// two-triangle torus boundary: the boundary-linking surface, the role
// partition, and the chain/branch structure.  Throws if the triangulation is
// not an inflation triangulation.
InflationStructure recognize_inflation(const Triangulation& tri);

StandardVector boundary_linking_surface(const InflationStructure& s);

// True iff vec's quads in every band and crossing tetrahedron agree with the
// boundary-linking surface's quad type there.
bool is_compatible(const InflationStructure& s, const StandardVector& vec);

// Builds the inflation of a one-vertex ideal triangulation along a frame of
// its vertex link: one band tetrahedron per frame edge, a crossing
// tetrahedron per edge whose frame-arc ends interleave, and index-2 branch
// point tetrahedra per branch point.
std::pair<Triangulation, InflationStructure> inflate(const Triangulation& ideal,
                                                     const Frame& frame);

struct SpunSurface {
    QuadVector quad;                    // over the crushed ideal triangulation
    std::array<long long, 2> slope{0, 0}; // (n, m): boundary is nA + mB
    long long chi = 0;
};

// Boundary slope (n, m) of a normal surface with boundary against the two
// degree-3 boundary edges A, B (ascending class order); normalized to n >= 0.
std::array<long long, 2> boundary_slope(const Triangulation& tri, const StandardVector& fiber);

// Drops the quad coordinates of the band, crossing and branch-point
// tetrahedra of a compatible surface; the rest is the spun-normal solution on
// the crushed triangulation (verified against its Q-matching system).
SpunSurface project_q(const Triangulation& tri, const InflationStructure& s,
                      const StandardVector& fiber, const CrushResult& result);

} // namespace spunfib
