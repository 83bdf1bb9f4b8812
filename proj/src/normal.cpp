#include "spunfib/normal.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spunfib {

namespace {

std::string vec_str(const std::vector<Int>& v, int per_tet, int tri_split) {
    std::ostringstream out;
    int n = static_cast<int>(v.size()) / per_tet;
    for (int t = 0; t < n; ++t) {
        out << 't' << t << ": [";
        for (int k = 0; k < per_tet; ++k) {
            if (k == tri_split)
                out << " | ";
            else if (k)
                out << ',';
            out << v[per_tet * t + k];
        }
        out << "]\n";
    }
    return out.str();
}

std::vector<Int> vec_parse(const std::string& text, int per_tet) {
    std::vector<Int> v;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto colon = line.find(':');
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (colon == std::string::npos || line.find('t') == std::string::npos)
            throw std::runtime_error("vector parse: bad line: " + line);
        std::string rest = line.substr(colon + 1);
        int got = 0;
        for (size_t i = 0; i < rest.size();) {
            if (std::isdigit(static_cast<unsigned char>(rest[i]))) {
                size_t j = i;
                while (j < rest.size() && std::isdigit(static_cast<unsigned char>(rest[j]))) ++j;
                v.emplace_back(rest.substr(i, j - i));
                ++got;
                i = j;
            } else {
                ++i;
            }
        }
        if (got != per_tet)
            throw std::runtime_error("vector parse: expected " + std::to_string(per_tet) +
                                     " entries per tetrahedron");
    }
    return v;
}

// The quad type whose arc cuts corner v of face f (pairs v with the vertex
// opposite the face).
int quad_cutting(int f, int v) { return quad_type(f, v); }

} // namespace

StandardVector StandardVector::vertex_linking(int n_tets) {
    StandardVector x(n_tets);
    for (int t = 0; t < n_tets; ++t)
        for (int c = 0; c < 4; ++c) x.tri(t, c) = 1;
    return x;
}

std::string StandardVector::str() const { return vec_str(v, 7, 4); }
std::string QuadVector::str() const { return vec_str(v, 3, -1); }

StandardVector StandardVector::parse(const std::string& text) {
    StandardVector x;
    x.v = vec_parse(text, 7);
    return x;
}

QuadVector QuadVector::parse(const std::string& text) {
    QuadVector x;
    x.v = vec_parse(text, 3);
    return x;
}

QuadVector quad_projection(const StandardVector& x) {
    QuadVector q(x.n_tets());
    for (int t = 0; t < x.n_tets(); ++t)
        for (int k = 0; k < 3; ++k) q.quad(t, k) = x.quad(t, k);
    return q;
}

bool is_admissible(const StandardVector& x) { return is_admissible(quad_projection(x)); }

bool is_admissible(const QuadVector& x) {
    for (const Int& e : x.v)
        if (e < 0) return false;
    for (int t = 0; t < x.n_tets(); ++t) {
        int nz = 0;
        for (int k = 0; k < 3; ++k)
            if (x.quad(t, k) != 0) ++nz;
        if (nz > 1) return false;
    }
    return true;
}

bool MatchingSystem::satisfies(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw std::runtime_error("matching system: wrong vector length");
    for (const auto& row : rows) {
        Int s = 0;
        for (int j = 0; j < cols; ++j) s += row[j] * x[j];
        if (s != 0) return false;
    }
    return true;
}

std::array<std::array<int, 2>, 4> quad_corner_edges(int q) {
    auto p = quad_pairs(q);
    int a = p[0][0], b = p[0][1], c = p[1][0], d = p[1][1];
    return {{{a, c}, {a, d}, {b, c}, {b, d}}};
}

MatchingSystem standard_matching_system(const Triangulation& tri) {
    MatchingSystem sys;
    sys.cols = 7 * tri.size();
    Skeleton sk(tri);
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_glued(t, f)) continue;
            const Gluing& g = *tri.gluing(t, f);
            int f2 = g.perm[f];
            if (FaceSlot{g.tet, f2} < FaceSlot{t, f}) continue;
            for (int v : face_vertices(f)) {
                int w = g.perm[v];
                std::vector<Int> row(sys.cols);
                row[7 * t + v] += 1;
                row[7 * t + 4 + quad_cutting(f, v)] += 1;
                row[7 * g.tet + w] -= 1;
                row[7 * g.tet + 4 + quad_cutting(f2, w)] -= 1;
                sys.rows.push_back(std::move(row));
                sys.labels.push_back("face " + std::to_string(sk.face_class(t, f)) +
                                     " arc at t" + std::to_string(t) + "v" + std::to_string(v));
            }
        }
    return sys;
}

std::pair<MatchingSystem, SenseTable> q_matching_system(const Triangulation& tri) {
    Skeleton sk(tri);
    std::vector<int> ori = tri.orientations();
    int n = tri.size();

    SenseTable table;
    table.entries.assign(sk.n_edge_classes(), std::vector<SenseEntry>(3 * n));
    for (int t = 0; t < n; ++t)
        for (int q = 0; q < 3; ++q) {
            auto pairs = quad_pairs(q);
            auto corners = quad_corner_edges(q);
            for (int ci = 0; ci < 4; ++ci) {
                int u = corners[ci][0], w = corners[ci][1]; // u in the 0-side pair
                int m1 = std::min(u, w), m2 = std::max(u, w);
                auto partner = [&](int vv) {
                    for (auto pr : pairs)
                        if (pr[0] == vv || pr[1] == vv) return pr[0] == vv ? pr[1] : pr[0];
                    return -1;
                };
                // Right-hand twist of the quad around the edge.  Handedness
                // does not depend on the edge direction, only on the tet's
                // orientation sign.
                int tw = Perm4(m1, m2, partner(m1), partner(m2)).sign() * ori[t];
                int cls = sk.edge_class(t, m1, m2);
                SenseEntry& e = table.entries[cls][3 * t + q];
                e.corner_sign[ci] = tw;
                e.sense += e.corner_sign[ci];
            }
        }

    MatchingSystem sys;
    sys.cols = 3 * n;
    for (int k = 0; k < sk.n_edge_classes(); ++k) {
        if (sk.edge_info(k).boundary) continue;
        std::vector<Int> row(sys.cols);
        for (int j = 0; j < sys.cols; ++j) row[j] = table.entries[k][j].sense;
        sys.rows.push_back(std::move(row));
        sys.labels.push_back("edge " + std::to_string(k));
    }
    return {std::move(sys), std::move(table)};
}

namespace {

// The three arc types of a boundary face keyed by the sorted pair of edge
// classes their endpoints lie on; value is the corner each cuts.
std::map<std::array<int, 2>, int> boundary_arc_keys(const Skeleton& sk, int t, int f) {
    std::map<std::array<int, 2>, int> keys;
    auto fv = face_vertices(f);
    for (int v : fv) {
        std::array<int, 2> k{-1, -1};
        int idx = 0;
        for (int w : fv)
            if (w != v) k[idx++] = sk.edge_class(t, std::min(v, w), std::max(v, w));
        std::sort(k.begin(), k.end());
        if (keys.count(k))
            throw std::runtime_error("boundary face has a repeated edge pair");
        keys[k] = v;
    }
    return keys;
}

void require_torus_boundary(const Triangulation& tri, const Skeleton& sk,
                            const std::vector<FaceSlot>& bd) {
    if (bd.size() != 2)
        throw std::runtime_error("boundary is not a two-triangle torus");
    auto k1 = boundary_arc_keys(sk, bd[0].tet, bd[0].face);
    auto k2 = boundary_arc_keys(sk, bd[1].tet, bd[1].face);
    std::set<int> vcls;
    for (const FaceSlot& s : bd)
        for (int v : face_vertices(s.face)) vcls.insert(sk.vertex_class(s.tet, v));
    bool same_keys = k1.size() == k2.size() &&
                     std::equal(k1.begin(), k1.end(), k2.begin(),
                                [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!same_keys || vcls.size() != 1)
        throw std::runtime_error("boundary is not a two-triangle torus");
}

} // namespace

MatchingSystem boundary_equations(const Triangulation& tri) {
    Skeleton sk(tri);
    auto bd = tri.boundary_faces();
    require_torus_boundary(tri, sk, bd);
    auto [t1, f1] = bd[0];
    auto [t2, f2] = bd[1];
    auto k1 = boundary_arc_keys(sk, t1, f1);
    auto k2 = boundary_arc_keys(sk, t2, f2);

    MatchingSystem sys;
    sys.cols = 7 * tri.size();
    const char* names[3] = {"alpha", "beta", "gamma"};
    int idx = 0;
    for (const auto& [key, v1] : k1) {
        int v2 = k2.at(key);
        std::vector<Int> row(sys.cols);
        row[7 * t1 + v1] += 1;
        row[7 * t1 + 4 + quad_cutting(f1, v1)] += 1;
        row[7 * t2 + v2] -= 1;
        row[7 * t2 + 4 + quad_cutting(f2, v2)] -= 1;
        sys.rows.push_back(std::move(row));
        sys.labels.push_back(names[idx++]);
    }
    return sys;
}

namespace {

// ---- explicit disc complex ----

struct DiscComplex {
    const Triangulation* tri;
    const Skeleton* sk;
    int n;
    std::vector<std::array<long long, 4>> xt; // triangle counts
    std::vector<std::array<long long, 3>> yq; // quad counts
    std::vector<std::array<long long, 4>> tri_base;
    std::vector<std::array<long long, 3>> quad_base;
    long long n_discs = 0;

    DiscComplex(const Triangulation& t, const Skeleton& s, const StandardVector& x)
        : tri(&t), sk(&s), n(t.size()), xt(n), yq(n), tri_base(n), quad_base(n) {
        long long total = 0;
        auto fits = [](const Int& v) {
            return v >= 0 && v.fits_slong_p() && v.get_si() <= 2000000;
        };
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < 4; ++c) {
                if (!fits(x.tri(i, c))) throw std::runtime_error("surface too large to glue up");
                tri_base[i][c] = total;
                xt[i][c] = x.tri(i, c).get_si();
                total += xt[i][c];
            }
            for (int q = 0; q < 3; ++q) {
                if (!fits(x.quad(i, q))) throw std::runtime_error("surface too large to glue up");
                quad_base[i][q] = total;
                yq[i][q] = x.quad(i, q).get_si();
                total += yq[i][q];
            }
            if (total > 2000000) throw std::runtime_error("surface too large to glue up");
        }
        n_discs = total;
    }

    bool is_tri(long long id, int t) const {
        return id < quad_base[t][0];
    }

    // Disc carrying the arc cutting corner v of face f at depth i (1-based,
    // counted from the corner).
    long long disc_at_arc(int t, int f, int v, long long i) const {
        if (i <= xt[t][v]) return tri_base[t][v] + i - 1;
        int q = quad_cutting(f, v);
        long long j = i - xt[t][v];
        bool zero_side = (f == 0 || v == 0); // the pair {f,v} contains vertex 0
        if (!zero_side) j = yq[t][q] + 1 - j;
        if (j < 1 || j > yq[t][q]) throw std::runtime_error("disc complex: arc depth out of range");
        return quad_base[t][q] + j - 1;
    }

    long long arcs_in_face(int t, int f) const {
        long long s = 0;
        for (int v : face_vertices(f)) s += xt[t][v] + yq[t][quad_cutting(f, v)];
        return s;
    }

    // Number of surface points in the interior of edge (u,v) of tet t.
    long long points_on_edge(int t, int u, int v) const {
        long long s = xt[t][u] + xt[t][v];
        for (int q = 0; q < 3; ++q)
            if (q != quad_type(u, v)) s += yq[t][q];
        return s;
    }

    // Disc through the point at position pos (1-based from u) on edge (u,v).
    long long disc_at_edge_point(int t, int u, int v, long long pos) const {
        long long total = points_on_edge(t, u, v);
        if (pos <= xt[t][u]) return tri_base[t][u] + pos - 1;
        if (pos > total - xt[t][v]) return tri_base[t][v] + (total - pos);
        long long j = pos - xt[t][u];
        for (int q = 0; q < 3; ++q) {
            if (q == quad_type(u, v) || yq[t][q] == 0) continue;
            auto pairs = quad_pairs(q);
            bool u_zero_side = (u == pairs[0][0] || u == pairs[0][1]);
            long long copy = u_zero_side ? j : yq[t][q] + 1 - j;
            return quad_base[t][q] + copy - 1;
        }
        throw std::runtime_error("disc complex: edge point out of range");
    }

    // Position from v of the disc's corner on edge (v,w).
    long long corner_pos(long long disc, int t, int v, int w) const {
        for (int c = 0; c < 4; ++c)
            if (disc >= tri_base[t][c] && disc < tri_base[t][c] + xt[t][c]) {
                if (c == v) return disc - tri_base[t][c] + 1;
                if (c == w) return points_on_edge(t, v, w) - (disc - tri_base[t][c]);
                throw std::runtime_error("disc complex: disc misses edge");
            }
        for (int q = 0; q < 3; ++q)
            if (disc >= quad_base[t][q] && disc < quad_base[t][q] + yq[t][q]) {
                long long j = disc - quad_base[t][q] + 1;
                auto pairs = quad_pairs(q);
                bool v_zero_side = (v == pairs[0][0] || v == pairs[0][1]);
                return xt[t][v] + (v_zero_side ? j : yq[t][q] + 1 - j);
            }
        throw std::runtime_error("disc complex: bad disc id");
    }

    // Direction the disc's boundary orientation induces on its arc in face f,
    // relative to the arc's reference direction (from the corner's lower
    // neighbour edge to the higher one).
    int arc_direction(long long disc, int t, int f) const {
        for (int c = 0; c < 4; ++c)
            if (disc >= tri_base[t][c] && disc < tri_base[t][c] + xt[t][c]) {
                // traverse the corners at edges (c,w1),(c,w2),(c,w3), w ascending
                std::array<int, 3> w{};
                int idx = 0;
                for (int k = 0; k < 4; ++k)
                    if (k != c) w[idx++] = k;
                if (f == w[2]) return 1; // w1->w2 leg
                if (f == w[0]) return 1; // w2->w3 leg
                return -1;               // w3->w1 leg, against ascending order
            }
        for (int q = 0; q < 3; ++q)
            if (disc >= quad_base[t][q] && disc < quad_base[t][q] + yq[t][q]) {
                auto p = quad_pairs(q);
                // traversal (a,c)->(a,d)->(b,d)->(b,c); +1 through the faces
                // missing b and missing c, -1 through those missing a and d
                if (f == p[0][1] || f == p[1][0]) return 1;
                return -1;
            }
        throw std::runtime_error("disc complex: bad disc id");
    }
};

struct LocalUF {
    std::vector<long long> p;
    explicit LocalUF(long long n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    long long find(long long x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(long long a, long long b) { p[find(a)] = find(b); }
};

struct LocalSignedUF {
    std::vector<long long> p;
    std::vector<int> s;
    bool conflict = false;
    explicit LocalSignedUF(long long n) : p(n), s(n, 1) { std::iota(p.begin(), p.end(), 0); }
    std::pair<long long, int> find(long long x) {
        if (p[x] == x) return {x, 1};
        auto [r, sg] = find(p[x]);
        p[x] = r;
        s[x] *= sg;
        return {r, s[x]};
    }
    void unite(long long a, long long b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa != rel * sb) conflict = true;
            return;
        }
        p[ra] = rb;
        s[ra] = sa * rel * sb;
    }
};

} // namespace

SurfaceTopology surface_topology(const Triangulation& tri, const StandardVector& x) {
    if (!is_admissible(x)) throw std::runtime_error("surface_topology: vector not admissible");
    if (!standard_matching_system(tri).satisfies(x))
        throw std::runtime_error("surface_topology: vector fails the matching equations");
    Skeleton sk(tri);
    DiscComplex dc(tri, sk, x);

    SurfaceTopology topo;
    if (dc.n_discs == 0) return topo;

    LocalUF comp(dc.n_discs);
    LocalSignedUF side(dc.n_discs);

    // glue discs across interior faces
    long long n_arcs = 0;
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_glued(t, f)) {
                n_arcs += dc.arcs_in_face(t, f);
                continue;
            }
            const Gluing& g = *tri.gluing(t, f);
            int f2 = g.perm[f];
            if (FaceSlot{g.tet, f2} < FaceSlot{t, f}) continue;
            n_arcs += dc.arcs_in_face(t, f);
            for (int v : face_vertices(f)) {
                // reference direction flips when the gluing reverses the order
                // of the two non-corner vertices
                std::array<int, 2> ab{-1, -1};
                int idx = 0;
                for (int w : face_vertices(f))
                    if (w != v) ab[idx++] = w;
                int rel = g.perm[ab[0]] < g.perm[ab[1]] ? 1 : -1;
                long long depth = dc.xt[t][v] + dc.yq[t][quad_cutting(f, v)];
                for (long long i = 1; i <= depth; ++i) {
                    long long d1 = dc.disc_at_arc(t, f, v, i);
                    long long d2 = dc.disc_at_arc(g.tet, f2, g.perm[v], i);
                    comp.unite(d1, d2);
                    int dir1 = dc.arc_direction(d1, t, f);
                    int dir2 = dc.arc_direction(d2, g.tet, f2);
                    side.unite(d1, d2, -rel * dir1 * dir2);
                }
            }
        }
    topo.orientable = !side.conflict;

    // counts per component
    std::map<long long, long long> comp_chi;
    std::map<long long, bool> comp_bdry;
    auto touch = [&](long long disc) -> long long& { return comp_chi[comp.find(disc)]; };

    long long n_points = 0;
    for (int k = 0; k < sk.n_edge_classes(); ++k) {
        const EdgeSlot& rep = sk.edge_info(k).slots.front();
        long long cnt = dc.points_on_edge(rep.tet, rep.a, rep.b);
        n_points += cnt;
        for (long long pos = 1; pos <= cnt; ++pos)
            touch(dc.disc_at_edge_point(rep.tet, rep.a, rep.b, pos)) += 1;
    }
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            bool interior = tri.is_glued(t, f);
            if (interior) {
                const Gluing& g = *tri.gluing(t, f);
                if (FaceSlot{g.tet, g.perm[f]} < FaceSlot{t, f}) continue;
            }
            for (int v : face_vertices(f)) {
                long long depth = dc.xt[t][v] + dc.yq[t][quad_cutting(f, v)];
                for (long long i = 1; i <= depth; ++i) {
                    long long d = dc.disc_at_arc(t, f, v, i);
                    touch(d) -= 1;
                    if (!interior) comp_bdry[comp.find(d)] = true;
                }
            }
        }
    for (long long d = 0; d < dc.n_discs; ++d) touch(d) += 1;

    topo.euler_characteristic = n_points - n_arcs + dc.n_discs;
    topo.component_count = static_cast<int>(comp_chi.size());
    long long chi_sum = 0;
    for (const auto& [root, chi] : comp_chi) {
        chi_sum += chi;
        bool bdry = comp_bdry.count(root) && comp_bdry[root];
        bool sphere = !bdry && chi == 2;
        bool disc = bdry && chi == 1;
        if (!sphere && !disc) topo.chi_negative -= chi;
    }
    if (chi_sum != topo.euler_characteristic)
        throw std::runtime_error("surface_topology: internal chi mismatch");

    // boundary curves: walk the arcs in unglued faces
    auto bd = tri.boundary_faces();
    if (!bd.empty()) {
        std::map<std::pair<int, long long>, long long> node_id; // (edge class, class pos)
        std::vector<std::pair<long long, long long>> graph_edges;
        auto node = [&](int t, int v, int w, long long pos_from_v) {
            int m1 = std::min(v, w), m2 = std::max(v, w);
            long long cnt = dc.points_on_edge(t, m1, m2);
            long long asc = v < w ? pos_from_v : cnt + 1 - pos_from_v;
            long long cls_pos = sk.edge_sign(t, m1, m2) > 0 ? asc : cnt + 1 - asc;
            auto key = std::make_pair(sk.edge_class(t, m1, m2), cls_pos);
            auto it = node_id.find(key);
            if (it == node_id.end()) it = node_id.emplace(key, node_id.size()).first;
            return it->second;
        };
        struct BArc {
            long long n[2];
            int m1[2], m2[2]; // local ascending edge pair at each end
            int tet, face;
        };
        std::vector<BArc> barcs;
        for (const FaceSlot& s : bd)
            for (int v : face_vertices(s.face)) {
                std::array<int, 2> ab{-1, -1};
                int idx = 0;
                for (int w : face_vertices(s.face))
                    if (w != v) ab[idx++] = w;
                long long depth =
                    dc.xt[s.tet][v] + dc.yq[s.tet][quad_cutting(s.face, v)];
                for (long long i = 1; i <= depth; ++i) {
                    long long d = dc.disc_at_arc(s.tet, s.face, v, i);
                    BArc a;
                    a.tet = s.tet;
                    a.face = s.face;
                    for (int k = 0; k < 2; ++k) {
                        a.n[k] = node(s.tet, v, ab[k], dc.corner_pos(d, s.tet, v, ab[k]));
                        a.m1[k] = std::min(v, ab[k]);
                        a.m2[k] = std::max(v, ab[k]);
                    }
                    graph_edges.emplace_back(a.n[0], a.n[1]);
                    barcs.push_back(a);
                }
            }
        LocalUF cuf(node_id.size());
        for (auto [a, b] : graph_edges) cuf.unite(a, b);
        std::set<long long> roots;
        for (long long i = 0; i < static_cast<long long>(node_id.size()); ++i)
            roots.insert(cuf.find(i));
        topo.boundary_curve_count = static_cast<int>(roots.size());

        // Signed crossings of each boundary curve with the boundary edge
        // classes: walk the curves, and at each edge point score +1 when the
        // entered face lies left of the class direction.  A positively
        // oriented face has the interior on the left of its boundary cycle.
        try {
            std::vector<int> ori = tri.orientations();
            std::vector<std::vector<std::pair<size_t, int>>> inc(node_id.size());
            for (size_t i = 0; i < barcs.size(); ++i)
                for (int k = 0; k < 2; ++k) inc[barcs[i].n[k]].push_back({i, k});
            for (const auto& at : inc)
                if (at.size() != 2)
                    throw std::runtime_error("surface_topology: boundary walk degree");

            // sign of entering arc (i) at its end (k)
            auto cross_sign = [&](size_t i, int k) {
                const BArc& a = barcs[i];
                auto w = face_vertices(a.face);
                // ascending-cycle pairs are (w0,w1),(w1,w2); (w0,w2) runs down
                int asc_in_cycle = (a.m1[k] == w[0] && a.m2[k] == w[2]) ? -1 : 1;
                int pos_cycle = ori[a.tet] * (a.face % 2 ? -1 : 1);
                int cycle_dir = asc_in_cycle * pos_cycle; // +1: cycle runs ascending
                return cycle_dir == sk.edge_sign(a.tet, a.m1[k], a.m2[k]) ? 1 : -1;
            };
            std::vector<int> node_class(node_id.size());
            for (const auto& [key, id] : node_id) node_class[id] = key.first;

            std::vector<char> arc_seen(barcs.size(), 0);
            bool all_essential = !barcs.empty();
            for (size_t start = 0; start < barcs.size(); ++start) {
                if (arc_seen[start]) continue;
                std::vector<long long> totals(sk.n_edge_classes(), 0);
                size_t i = start;
                int out_end = 1; // leave through n[1] first
                for (;;) {
                    arc_seen[i] = 1;
                    long long nd = barcs[i].n[out_end];
                    auto [j, k] = (inc[nd][0].first == i && inc[nd][0].second == out_end)
                                      ? inc[nd][1]
                                      : inc[nd][0];
                    totals[node_class[nd]] += cross_sign(j, k);
                    i = j;
                    out_end = 1 - k;
                    if (i == start && out_end == 1) break;
                }
                bool essential = false;
                for (long long c : totals)
                    if (c != 0) essential = true;
                if (!essential) all_essential = false;
                topo.boundary_curve_crossings.push_back(std::move(totals));
            }
            topo.boundary_essential = all_essential;
        } catch (const std::runtime_error&) {
            // non-orientable ambient triangulation: crossings left empty
        }

        // arc totals for the two-triangle torus boundary
        if (bd.size() == 2) {
            try {
                require_torus_boundary(tri, sk, bd);
                auto k1 = boundary_arc_keys(sk, bd[0].tet, bd[0].face);
                auto k2 = boundary_arc_keys(sk, bd[1].tet, bd[1].face);
                int idx = 0;
                for (const auto& [key, v1] : k1) {
                    int v2 = k2.at(key);
                    topo.arc_counts[2 * idx] =
                        dc.xt[bd[0].tet][v1] + dc.yq[bd[0].tet][quad_cutting(bd[0].face, v1)];
                    topo.arc_counts[2 * idx + 1] =
                        dc.xt[bd[1].tet][v2] + dc.yq[bd[1].tet][quad_cutting(bd[1].face, v2)];
                    ++idx;
                }
            } catch (const std::runtime_error&) {
                // boundary is not the two-triangle torus; leave zeros
            }
        }
    }
    return topo;
}

std::optional<StandardVector> thin_edge_link(const Triangulation& tri, int edge_class) {
    Skeleton sk(tri);
    if (edge_class < 0 || edge_class >= sk.n_edge_classes())
        throw std::runtime_error("thin_edge_link: edge class out of range");
    const EdgeClassInfo& info = sk.edge_info(edge_class);

    StandardVector x(tri.size());
    const EdgeSlot& s0 = info.slots.front();
    std::set<int> ends{sk.vertex_class(s0.tet, s0.a), sk.vertex_class(s0.tet, s0.b)};
    for (int c : ends)
        for (auto [t, v] : sk.vertex_info(c).slots) x.tri(t, v) += 1;

    for (const EdgeSlot& s : info.slots) {
        x.tri(s.tet, s.a) -= 1;
        x.tri(s.tet, s.b) -= 1;
        x.quad(s.tet, quad_type(s.a, s.b)) += 1;
    }
    for (const Int& e : x.v)
        if (e < 0) return std::nullopt;
    if (!is_admissible(x)) return std::nullopt;
    return x;
}

bool is_thin_edge_link(const Triangulation& tri, const StandardVector& x) {
    auto normalized = [](std::vector<Int> v) {
        Int g = 0;
        for (const Int& e : v) g = gcd(g, e);
        if (g > 1)
            for (Int& e : v) e /= g;
        return v;
    };
    std::vector<Int> xn = normalized(x.v);
    Skeleton sk(tri);
    for (int e = 0; e < sk.n_edge_classes(); ++e) {
        auto tube = thin_edge_link(tri, e);
        if (tube && normalized(tube->v) == xn) return true;
    }
    return false;
}

} // namespace spunfib
