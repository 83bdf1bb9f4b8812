#pragma once

#include <array>
#include <vector>

#include "spunfib/triangulation.hpp"

namespace spunfib {

// Edge slots within a tetrahedron, indexed 0..5:
// 0:(01) 1:(02) 2:(03) 3:(12) 4:(13) 5:(23)
int edge_index(int a, int b);
std::array<int, 2> edge_ends(int e); // ascending

// Quad types 0:(01|23) 1:(02|13) 2:(03|12).
int quad_type(int a, int b); // type separating {a,b} from the rest
std::array<std::array<int, 2>, 2> quad_pairs(int q);

struct EdgeSlot {
    int tet;
    int a, b; // oriented a -> b, matching the class orientation
};

struct EdgeClassInfo {
    int degree = 0;
    bool boundary = false;           // touches an unglued face
    std::vector<EdgeSlot> slots;     // all oriented slots in the class
};

struct VertexClassInfo {
    std::vector<std::pair<int, int>> slots; // (tet, vertex)
    // Link surface data filled by Skeleton:
    int link_chi = 0;
    bool link_boundary = false;
    bool link_orientable = true;
    bool ideal = false; // link is a closed surface (not a disc)
};

// One triangulated vertex link.  Triangles correspond to tetrahedron corners
// (labelled i_j: tet i, corner j).  Sides of the triangle at corner v are the
// faces of the tetrahedron containing v; corners of the triangle are the edges
// through v.
struct LinkTriangle {
    int tet, corner;
};

struct VertexLink {
    int vertex_class;
    std::vector<LinkTriangle> triangles;
    // side adjacency: for triangle index i and face f (f != corner):
    // adjacent triangle index, or -1 on the manifold boundary.
    // A side of triangle (t,v) is identified by the tetrahedron face f.

    // link vertex classes: a link vertex is an end of an edge slot, keyed by
    // (tet, edge(v,w) with orientation towards the class corner): we store per
    // (tet, corner v, other vertex w) a link vertex id.
    // link edge classes: per (tet, corner v, face f) an arc id.
    int chi = 0;
    bool closed = false;
    bool orientable = true;
    int n_link_vertices = 0;
    int n_link_edges = 0;
};

class Skeleton {
public:
    explicit Skeleton(const Triangulation& tri);

    const Triangulation& tri() const { return *tri_; }

    int n_vertex_classes() const { return static_cast<int>(vertex_info_.size()); }
    int n_edge_classes() const { return static_cast<int>(edge_info_.size()); }
    int n_face_classes() const { return n_face_classes_; }

    int vertex_class(int tet, int v) const { return vclass_[tet][v]; }
    int edge_class(int tet, int a, int b) const { return eclass_[tet][edge_index(a, b)]; }
    // +1 if (a,b) agrees with the class orientation, -1 otherwise.
    int edge_sign(int tet, int a, int b) const {
        int s = esign_[tet][edge_index(a, b)];
        return a < b ? s : -s;
    }
    int face_class(int tet, int f) const { return fclass_[tet][f]; }

    const EdgeClassInfo& edge_info(int k) const { return edge_info_[k]; }
    const VertexClassInfo& vertex_info(int k) const { return vertex_info_[k]; }

    TriKind kind() const;

    // Extra validation on top of Triangulation::validate(): vertex links must
    // be discs or closed orientable surfaces; edge links must close up or end
    // on the boundary consistently.
    void validate_links() const;

    // ---- vertex link structure (needed for frames) ----
    // Link vertex id for the end of edge (v,w) at v in tetrahedron tet.
    int link_vertex(int tet, int v, int w) const { return lv_[tet][v * 4 + w]; }
    // Link edge (normal arc) id for the arc cutting corner v in face f of tet.
    int link_edge(int tet, int v, int f) const { return le_[tet][v * 4 + f]; }
    int n_link_vertices() const { return n_link_vertices_; }
    int n_link_edges() const { return n_link_edges_; }
    // Endpoints of a link edge id (unordered pair of link vertex ids).
    std::array<int, 2> link_edge_ends(int id) const { return le_ends_[id]; }
    // Representative slot (tet, v, f) of a link edge class.
    std::array<int, 3> link_edge_rep(int id) const { return le_rep_[id]; }
    // Sign of slot (t,v,f)'s ascending end order relative to the class rep.
    int link_edge_sign(int tet, int v, int f) const { return le_sign_[tet][v * 4 + f]; }
    // All slots of a link edge class (one for interior faces' each side).
    const std::vector<std::array<int, 3>>& link_edge_slots(int id) const {
        return le_slots_[id];
    }
    // Vertex class that a link vertex belongs to (the class of its corner).
    int link_vertex_vclass(int id) const { return lv_vclass_[id]; }
    // Representative (tet, v, w) of a link vertex class.
    std::array<int, 3> link_vertex_rep(int id) const { return lv_rep_[id]; }
    // All corner slots of a link vertex class.
    const std::vector<std::array<int, 3>>& link_vertex_slots(int id) const {
        return lv_slots_[id];
    }

    const VertexLink& vertex_link(int vclass) const { return links_[vclass]; }

private:
    const Triangulation* tri_;
    std::vector<std::array<int, 4>> vclass_;
    std::vector<std::array<int, 6>> eclass_;
    std::vector<std::array<int, 6>> esign_;
    std::vector<std::array<int, 4>> fclass_;
    int n_face_classes_ = 0;
    std::vector<EdgeClassInfo> edge_info_;
    std::vector<VertexClassInfo> vertex_info_;

    std::vector<std::array<int, 16>> lv_; // link vertex ids, -1 unused
    std::vector<std::array<int, 16>> le_; // link edge ids, -1 unused
    int n_link_vertices_ = 0;
    int n_link_edges_ = 0;
    std::vector<std::array<int, 2>> le_ends_;
    std::vector<std::array<int, 16>> le_sign_;
    std::vector<std::array<int, 3>> le_rep_;
    std::vector<std::vector<std::array<int, 3>>> le_slots_;
    std::vector<int> lv_vclass_;
    std::vector<std::array<int, 3>> lv_rep_;
    std::vector<std::vector<std::array<int, 3>>> lv_slots_;
    std::vector<VertexLink> links_;

    void build_classes();
    void build_links();
};

} // namespace spunfib
