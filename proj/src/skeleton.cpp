#include "spunfib/skeleton.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace spunfib {

namespace {

const int kEdgeIdx[4][4] = {
    {-1, 0, 1, 2},
    {0, -1, 3, 4},
    {1, 3, -1, 5},
    {2, 4, 5, -1},
};

const int kEdgeEnds[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// Union-find with sign relative to the root.
struct SignedUF {
    std::vector<int> parent, rank_;
    std::vector<int> sign; // sign relative to parent
    bool conflict = false;

    explicit SignedUF(int n) : parent(n), rank_(n, 0), sign(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 1};
        auto [r, s] = find(parent[x]);
        parent[x] = r;
        sign[x] *= s;
        return {r, sign[x]};
    }
    void unite(int a, int b, int rel) { // sign(a) = rel * sign(b)
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa != rel * sb) conflict = true;
            return;
        }
        if (rank_[ra] < rank_[rb]) {
            parent[ra] = rb;
            sign[ra] = sa * rel * sb; // so that total sign of a equals rel*sign(b)
        } else {
            parent[rb] = ra;
            sign[rb] = sb * rel * sa;
            if (rank_[ra] == rank_[rb]) ++rank_[ra];
        }
    }
};

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Deterministic class numbering: classes ordered by least member slot id.
std::vector<int> number_classes(std::vector<int>& root_of, int nslots,
                                const std::vector<bool>& used) {
    std::map<int, int> order;
    for (int i = 0; i < nslots; ++i)
        if (used[i] && !order.count(root_of[i])) order.emplace(root_of[i], 0);
    // order by least slot: first occurrence while scanning i ascending
    std::map<int, int> id;
    int next = 0;
    for (int i = 0; i < nslots; ++i) {
        if (!used[i]) continue;
        if (!id.count(root_of[i])) id[root_of[i]] = next++;
    }
    std::vector<int> out(nslots, -1);
    for (int i = 0; i < nslots; ++i)
        if (used[i]) out[i] = id[root_of[i]];
    return out;
}

} // namespace

int edge_index(int a, int b) { return kEdgeIdx[a][b]; }
std::array<int, 2> edge_ends(int e) { return {kEdgeEnds[e][0], kEdgeEnds[e][1]}; }

int quad_type(int a, int b) {
    int e = edge_index(a, b);
    // pair {0,1} or {2,3} -> 0 ; {0,2},{1,3} -> 1 ; {0,3},{1,2} -> 2
    switch (e) {
        case 0: case 5: return 0;
        case 1: case 4: return 1;
        default: return 2;
    }
}

std::array<std::array<int, 2>, 2> quad_pairs(int q) {
    switch (q) {
        case 0: return {{{0, 1}, {2, 3}}};
        case 1: return {{{0, 2}, {1, 3}}};
        default: return {{{0, 3}, {1, 2}}};
    }
}

Skeleton::Skeleton(const Triangulation& tri) : tri_(&tri) {
    build_classes();
    build_links();
}

void Skeleton::build_classes() {
    const Triangulation& T = *tri_;
    int n = T.size();

    // --- vertices ---
    UF vuf(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!T.is_glued(t, f)) continue;
            const Gluing& g = *T.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                if (v != f) vuf.unite(4 * t + v, 4 * g.tet + g.perm[v]);
        }
    {
        std::vector<int> roots(4 * n);
        for (int i = 0; i < 4 * n; ++i) roots[i] = vuf.find(i);
        std::vector<bool> used(4 * n, true);
        auto ids = number_classes(roots, 4 * n, used);
        vclass_.assign(n, {});
        int nc = 0;
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v) {
                vclass_[t][v] = ids[4 * t + v];
                nc = std::max(nc, ids[4 * t + v] + 1);
            }
        vertex_info_.assign(nc, {});
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                vertex_info_[vclass_[t][v]].slots.emplace_back(t, v);
    }

    // --- edges with orientation ---
    SignedUF euf(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!T.is_glued(t, f)) continue;
            const Gluing& g = *T.gluing(t, f);
            for (int e = 0; e < 6; ++e) {
                auto [a, b] = edge_ends(e);
                if (a == f || b == f) continue;
                int pa = g.perm[a], pb = g.perm[b];
                int e2 = edge_index(pa, pb);
                int rel = (pa < pb) ? 1 : -1; // orientation of image relative to ascending
                euf.unite(6 * t + e, 6 * g.tet + e2, rel);
            }
        }
    if (euf.conflict)
        throw std::runtime_error("skeleton: edge identified with itself reversing orientation");
    {
        std::vector<int> roots(6 * n);
        std::vector<int> signs(6 * n);
        for (int i = 0; i < 6 * n; ++i) {
            auto [r, s] = euf.find(i);
            roots[i] = r;
            signs[i] = s;
        }
        std::vector<bool> used(6 * n, true);
        auto ids = number_classes(roots, 6 * n, used);
        eclass_.assign(n, {});
        esign_.assign(n, {});
        int nc = 0;
        // Normalize signs so the least slot of each class has sign +1.
        std::vector<int> norm; // per class: sign of the least slot
        for (int i = 0; i < 6 * n; ++i) {
            int id = ids[i];
            if (id >= static_cast<int>(norm.size())) norm.push_back(signs[i]);
            nc = std::max(nc, id + 1);
        }
        edge_info_.assign(nc, {});
        for (int t = 0; t < n; ++t)
            for (int e = 0; e < 6; ++e) {
                int i = 6 * t + e;
                eclass_[t][e] = ids[i];
                esign_[t][e] = signs[i] * norm[ids[i]];
                auto [a, b] = edge_ends(e);
                EdgeClassInfo& info = edge_info_[ids[i]];
                ++info.degree;
                if (esign_[t][e] == 1)
                    info.slots.push_back({t, a, b});
                else
                    info.slots.push_back({t, b, a});
            }
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                if (T.is_glued(t, f)) continue;
                for (int e = 0; e < 6; ++e) {
                    auto [a, b] = edge_ends(e);
                    if (a != f && b != f) edge_info_[eclass_[t][e]].boundary = true;
                }
            }
    }

    // --- faces ---
    {
        UF fuf(4 * n);
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f)
                if (T.is_glued(t, f)) {
                    const Gluing& g = *T.gluing(t, f);
                    fuf.unite(4 * t + f, 4 * g.tet + g.perm[f]);
                }
        std::vector<int> roots(4 * n);
        for (int i = 0; i < 4 * n; ++i) roots[i] = fuf.find(i);
        std::vector<bool> used(4 * n, true);
        auto ids = number_classes(roots, 4 * n, used);
        fclass_.assign(n, {});
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                fclass_[t][f] = ids[4 * t + f];
                n_face_classes_ = std::max(n_face_classes_, ids[4 * t + f] + 1);
            }
    }
}

void Skeleton::build_links() {
    const Triangulation& T = *tri_;
    int n = T.size();

    // link vertices: slots (t, v, w), v != w
    auto lvslot = [](int t, int v, int w) { return 16 * t + 4 * v + w; };
    UF lvuf(16 * n);
    std::vector<bool> lvused(16 * n, false);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w)
                if (v != w) lvused[lvslot(t, v, w)] = true;
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!T.is_glued(t, f)) continue;
            const Gluing& g = *T.gluing(t, f);
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w)
                    if (v != w && v != f && w != f)
                        lvuf.unite(lvslot(t, v, w), lvslot(g.tet, g.perm[v], g.perm[w]));
        }
    {
        std::vector<int> roots(16 * n, -1);
        for (int i = 0; i < 16 * n; ++i)
            if (lvused[i]) roots[i] = lvuf.find(i);
        auto ids = number_classes(roots, 16 * n, lvused);
        lv_.assign(n, {});
        for (auto& a : lv_) a.fill(-1);
        n_link_vertices_ = 0;
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w)
                    if (v != w) {
                        int id = ids[lvslot(t, v, w)];
                        lv_[t][4 * v + w] = id;
                        n_link_vertices_ = std::max(n_link_vertices_, id + 1);
                    }
        lv_vclass_.assign(n_link_vertices_, -1);
        lv_rep_.assign(n_link_vertices_, {-1, -1, -1});
        lv_slots_.assign(n_link_vertices_, {});
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int w = 0; w < 4; ++w)
                    if (v != w) {
                        int id = lv_[t][4 * v + w];
                        lv_vclass_[id] = vclass_[t][v];
                        if (lv_rep_[id][0] < 0) lv_rep_[id] = {t, v, w};
                        lv_slots_[id].push_back({t, v, w});
                    }
    }

    // link edges: slots (t, v, f), f != v.  An arc slot is oriented by the
    // ascending order of its two end corners; track signs across gluings so
    // attaching maps of 2-cells can be read off consistently.
    auto leslot = [](int t, int v, int f) { return 16 * t + 4 * v + f; };
    SignedUF leuf(16 * n);
    std::vector<bool> leused(16 * n, false);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int f = 0; f < 4; ++f)
                if (v != f) leused[leslot(t, v, f)] = true;
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (!T.is_glued(t, f)) continue;
            const Gluing& g = *T.gluing(t, f);
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                int x = -1, y = -1;
                for (int u = 0; u < 4; ++u)
                    if (u != v && u != f) (x < 0 ? x : y) = u;
                int rel = (g.perm[x] < g.perm[y]) ? 1 : -1;
                leuf.unite(leslot(t, v, f), leslot(g.tet, g.perm[v], g.perm[f]), rel);
            }
        }
    if (leuf.conflict)
        throw std::runtime_error("skeleton: link edge identified with itself reversed");
    {
        std::vector<int> roots(16 * n, -1);
        std::vector<int> signs(16 * n, 1);
        for (int i = 0; i < 16 * n; ++i)
            if (leused[i]) {
                auto [r, s] = leuf.find(i);
                roots[i] = r;
                signs[i] = s;
            }
        auto ids = number_classes(roots, 16 * n, leused);
        le_.assign(n, {});
        le_sign_.assign(n, {});
        for (auto& a : le_) a.fill(-1);
        for (auto& a : le_sign_) a.fill(0);
        n_link_edges_ = 0;
        // Normalize so the least slot of each class has sign +1.
        std::vector<int> norm;
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int f = 0; f < 4; ++f)
                    if (v != f) {
                        int id = ids[leslot(t, v, f)];
                        le_[t][4 * v + f] = id;
                        if (id >= static_cast<int>(norm.size()))
                            norm.resize(id + 1, signs[leslot(t, v, f)]);
                        n_link_edges_ = std::max(n_link_edges_, id + 1);
                    }
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int f = 0; f < 4; ++f)
                    if (v != f) {
                        int i = leslot(t, v, f);
                        le_sign_[t][4 * v + f] = signs[i] * norm[ids[i]];
                    }
        le_ends_.assign(n_link_edges_, {-1, -1});
        le_rep_.assign(n_link_edges_, {-1, -1, -1});
        le_slots_.assign(n_link_edges_, {});
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < 4; ++v)
                for (int f = 0; f < 4; ++f)
                    if (v != f) {
                        int id = le_[t][4 * v + f];
                        if (le_rep_[id][0] < 0) {
                            le_rep_[id] = {t, v, f};
                            int x = -1, y = -1;
                            for (int u = 0; u < 4; ++u)
                                if (u != v && u != f) (x < 0 ? x : y) = u;
                            le_ends_[id] = {link_vertex(t, v, x), link_vertex(t, v, y)};
                        }
                        le_slots_[id].push_back({t, v, f});
                    }
    }

    // per-vertex-class link surfaces
    links_.assign(vertex_info_.size(), {});
    std::vector<int> vcount(vertex_info_.size(), 0), ecount(vertex_info_.size(), 0),
        fcount(vertex_info_.size(), 0);
    std::vector<bool> vseen(n_link_vertices_, false), eseen(n_link_edges_, false);
    std::vector<int> e_nslots(n_link_edges_, 0);
    for (int id = 0; id < n_link_edges_; ++id)
        e_nslots[id] = static_cast<int>(le_slots_[id].size());
    bool orientable = T.is_orientable();
    for (size_t k = 0; k < vertex_info_.size(); ++k) {
        VertexLink& L = links_[k];
        L.vertex_class = static_cast<int>(k);
        L.orientable = orientable;
        L.closed = true;
    }
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            int k = vclass_[t][v];
            links_[k].triangles.push_back({t, v});
            ++fcount[k];
        }
    for (int id = 0; id < n_link_vertices_; ++id) ++vcount[lv_vclass_[id]];
    for (int id = 0; id < n_link_edges_; ++id) {
        auto [t, v, f] = le_rep_[id];
        int k = vclass_[t][v];
        ++ecount[k];
        if (e_nslots[id] == 1) links_[k].closed = false;
    }
    for (size_t k = 0; k < vertex_info_.size(); ++k) {
        VertexLink& L = links_[k];
        L.chi = vcount[k] - ecount[k] + fcount[k];
        L.n_link_vertices = vcount[k];
        L.n_link_edges = ecount[k];
        vertex_info_[k].link_chi = L.chi;
        vertex_info_[k].link_boundary = !L.closed;
        vertex_info_[k].link_orientable = L.orientable;
        vertex_info_[k].ideal = L.closed && L.chi < 2;
    }
}

TriKind Skeleton::kind() const {
    bool any_ideal = false, any_material = false;
    for (const auto& v : vertex_info_)
        (v.ideal ? any_ideal : any_material) = true;
    if (any_ideal && !any_material) return TriKind::Ideal;
    if (!any_ideal) return TriKind::Material;
    return TriKind::Mixed;
}

void Skeleton::validate_links() const {
    for (const auto& v : vertex_info_) {
        if (v.link_boundary) {
            if (v.link_chi != 1)
                throw std::runtime_error("validate: pinched vertex (link with boundary, chi != 1)");
        } else {
            if (!v.link_orientable)
                throw std::runtime_error("validate: non-orientable vertex link");
            if (v.link_chi > 2 || v.link_chi % 2 != 0)
                throw std::runtime_error("validate: bad closed vertex link");
        }
    }
}

} // namespace spunfib
