#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spunfib/skeleton.hpp"
#include "spunfib/triangulation.hpp"

namespace spunfib {

using Int = mpz_class;

// Coordinates are ordered per tetrahedron: 4 triangle types (the triangle
// cutting off vertex v has index v), then 3 quad types 0:(01|23) 1:(02|13)
// 2:(03|12).

struct StandardVector {
    std::vector<Int> v;

    StandardVector() = default;
    explicit StandardVector(int n_tets) : v(7 * n_tets) {}

    int n_tets() const { return static_cast<int>(v.size()) / 7; }

    Int& tri(int t, int corner) { return v[7 * t + corner]; }
    const Int& tri(int t, int corner) const { return v[7 * t + corner]; }
    Int& quad(int t, int q) { return v[7 * t + 4 + q]; }
    const Int& quad(int t, int q) const { return v[7 * t + 4 + q]; }

    // Vertex-linking surface: one triangle of each type, no quads.
    static StandardVector vertex_linking(int n_tets);

    std::string str() const;
    static StandardVector parse(const std::string& text);

    bool operator==(const StandardVector& o) const { return v == o.v; }
};

struct QuadVector {
    std::vector<Int> v;

    QuadVector() = default;
    explicit QuadVector(int n_tets) : v(3 * n_tets) {}

    int n_tets() const { return static_cast<int>(v.size()) / 3; }

    Int& quad(int t, int q) { return v[3 * t + q]; }
    const Int& quad(int t, int q) const { return v[3 * t + q]; }

    std::string str() const;
    static QuadVector parse(const std::string& text);

    bool operator==(const QuadVector& o) const { return v == o.v; }
    bool operator<(const QuadVector& o) const { return v < o.v; }
};

QuadVector quad_projection(const StandardVector& x);

// At most one nonzero quad coordinate per tetrahedron.
bool is_admissible(const StandardVector& x);
bool is_admissible(const QuadVector& x);

struct MatchingSystem {
    int cols = 0;
    std::vector<std::vector<Int>> rows;
    std::vector<std::string> labels;

    bool satisfies(const std::vector<Int>& x) const;
    bool satisfies(const StandardVector& x) const { return satisfies(x.v); }
    bool satisfies(const QuadVector& x) const { return satisfies(x.v); }
};

// Corner signs of one quad type against one edge class.  Corners are indexed
// 0..3 in the fixed order (a,c),(a,d),(b,c),(b,d) where the quad separates
// {a,b}|{c,d} with a < b, c < d, a == 0.  Corners on edges outside the class
// have sign 0; the sense is the total.
struct SenseEntry {
    std::array<int, 4> corner_sign{0, 0, 0, 0};
    int sense = 0;
};

struct SenseTable {
    // entries[edge_class][3 * tet + quad_type]
    std::vector<std::vector<SenseEntry>> entries;
};

// Edges of the quad (t,q) carrying its corners, in SenseEntry order.
std::array<std::array<int, 2>, 4> quad_corner_edges(int q);

// Arc counts across every interior face class: three rows per class.
MatchingSystem standard_matching_system(const Triangulation& tri);

// One row per interior edge class over the 3t quad coordinates; requires an
// orientable triangulation.
std::pair<MatchingSystem, SenseTable> q_matching_system(const Triangulation& tri);

// For a material triangulation whose boundary is the two-triangle torus:
// three rows over the standard coordinates pairing the arc types of the two
// boundary faces that share the same pair of boundary edges.
MatchingSystem boundary_equations(const Triangulation& tri);

struct SurfaceTopology {
    long long euler_characteristic = 0;
    int component_count = 0;
    int boundary_curve_count = 0;
    // Boundary arc totals (alpha, alpha', beta, beta', gamma, gamma') for the
    // two-triangle torus boundary; zeros otherwise.  Unprimed counts belong to
    // the lexicographically smaller boundary face; pairs are ordered by the
    // sorted pair of boundary edge classes the arcs run between.
    std::array<long long, 6> arc_counts{0, 0, 0, 0, 0, 0};
    bool orientable = true;
    long long chi_negative = 0; // -chi of the non-sphere, non-disc part
    // Net signed crossings of each boundary curve with the boundary edge
    // classes, indexed [curve][edge class].  The orientation of each curve is
    // arbitrary, so the totals are defined up to a per-curve sign.  Empty when
    // the ambient triangulation is non-orientable.
    std::vector<std::vector<long long>> boundary_curve_crossings;
    // True when every boundary curve has a nonzero crossing total with some
    // edge class, so none of them bounds a disc in the boundary torus.
    bool boundary_essential = false;
};

// Glues up the disc complex described by an admissible matching solution.
SurfaceTopology surface_topology(const Triangulation& tri, const StandardVector& x);

// The frontier of a neighbourhood of the edge class together with its
// endpoint vertices: the vertex links of the endpoints, tubed along the edge.
// Empty if that frontier is not normal (edge class meeting a tetrahedron in
// more than one slot, or in two quad types).
std::optional<StandardVector> thin_edge_link(const Triangulation& tri, int edge_class);

// True when x is a multiple of some thin edge link.  Such surfaces are
// compressible, so they can never be fibers.
bool is_thin_edge_link(const Triangulation& tri, const StandardVector& x);

} // namespace spunfib
