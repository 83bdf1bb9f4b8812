#include "spunfib/crush.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace spunfib {

namespace {

struct LocalUF {
    std::vector<long long> p;
    explicit LocalUF(long long n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    long long find(long long x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(long long a, long long b) { p[find(a)] = find(b); }
};

// The complement regions of the surface inside each tetrahedron:
//   corner(v,d): between triangle discs d and d+1 at vertex v (d = 0 is the
//     vertex tip), d in [0, x_v);
//   with no quads, one central region; with y quads of type q, the central
//   part splits into prism side 0 (towards quad_pairs(q)[0]), quad gaps
//   g = 1..y-1 between consecutive quads, and prism side 1.
struct Regions {
    const Triangulation* tri;
    const Skeleton* sk;
    int n;
    std::vector<std::array<long long, 4>> x;
    std::vector<int> q;      // quad type, -1 if none
    std::vector<long long> y;
    std::vector<long long> base;
    std::vector<std::array<long long, 4>> corner_off;
    std::vector<long long> central_off;
    long long n_regions = 0;

    Regions(const Triangulation& t, const Skeleton& s, const StandardVector& vec)
        : tri(&t), sk(&s), n(t.size()), x(n), q(n, -1), y(n, 0), base(n), corner_off(n),
          central_off(n) {
        auto fits = [](const Int& v) {
            return v >= 0 && v.fits_slong_p() && v.get_si() <= 1000000;
        };
        for (int i = 0; i < n; ++i) {
            base[i] = n_regions;
            for (int c = 0; c < 4; ++c) {
                if (!fits(vec.tri(i, c)))
                    throw std::runtime_error("crush: surface too large to decompose");
                corner_off[i][c] = n_regions - base[i];
                x[i][c] = vec.tri(i, c).get_si();
                n_regions += x[i][c];
            }
            central_off[i] = n_regions - base[i];
            for (int k = 0; k < 3; ++k)
                if (vec.quad(i, k) != 0) {
                    if (!fits(vec.quad(i, k)))
                        throw std::runtime_error("crush: surface too large to decompose");
                    q[i] = k;
                    y[i] = vec.quad(i, k).get_si();
                }
            n_regions += y[i] ? y[i] + 1 : 1;
            if (n_regions > 4000000) throw std::runtime_error("crush: surface too large to decompose");
        }
    }

    long long corner(int t, int v, long long d) const { return base[t] + corner_off[t][v] + d; }
    long long central(int t) const { return base[t] + central_off[t]; }
    // side 0 faces quad_pairs(q)[0]; gaps g = 1..y-1 sit between them
    long long prism(int t, int s) const { return central(t) + (s ? y[t] : 0); }
    long long gap(int t, long long g) const { return central(t) + g; }

    int side_of(int t, int v) const {
        auto p = quad_pairs(q[t]);
        return (v == p[0][0] || v == p[0][1]) ? 0 : 1;
    }
    // the vertex sharing a quad pair with w
    int partner(int t, int w) const {
        auto p = quad_pairs(q[t]);
        for (auto pr : p) {
            if (pr[0] == w) return pr[1];
            if (pr[1] == w) return pr[0];
        }
        return -1;
    }

    long long arcs_at(int t, int f, int v) const {
        return x[t][v] + (q[t] == quad_type(f, v) ? y[t] : 0);
    }

    // region inside tet t behind the sub-face of face f at corner v between
    // arcs d and d+1 (d = 0 is the corner triangle)
    long long behind(int t, int f, int v, long long d) const {
        if (d < x[t][v]) return corner(t, v, d);
        long long k = d - x[t][v]; // quads cut v here, so q pairs {f,v}
        int s = side_of(t, v);
        if (k == 0) return prism(t, s);
        return gap(t, s == 0 ? k : y[t] - k);
    }

    // region behind the central (hexagonal) sub-face of face f
    long long hex(int t, int f) const {
        if (y[t] == 0) return central(t);
        return prism(t, 1 - side_of(t, f));
    }

    // region along edge (a,b) between surface points p and p+1 counted from a
    long long along_edge(int t, int a, int b, long long p) const {
        long long total = points_on(t, a, b);
        if (p < x[t][a]) return corner(t, a, p);
        long long pb = total - p;
        if (pb < x[t][b]) return corner(t, b, pb);
        if (y[t] == 0) return central(t);
        if (q[t] == quad_type(a, b)) return prism(t, side_of(t, a));
        long long k = p - x[t][a];
        int sa = side_of(t, a);
        if (k == 0) return prism(t, sa);
        if (k == y[t]) return prism(t, 1 - sa);
        return gap(t, sa == 0 ? k : y[t] - k);
    }

    long long points_on(int t, int a, int b) const {
        long long s = x[t][a] + x[t][b];
        if (q[t] >= 0 && q[t] != quad_type(a, b)) s += y[t];
        return s;
    }

    // arc depth at corner v of the j-th quad (j = 1..y counted from side 0)
    long long quad_depth(int t, int v, long long j) const {
        return x[t][v] + (side_of(t, v) == 0 ? j : y[t] + 1 - j);
    }
};

// keyed ids for the product complex and its horizontal cells
struct KeyIds {
    std::map<std::array<long long, 5>, int> ids;
    int get(long long a, long long b, long long c, long long d, long long e) {
        auto [it, fresh] = ids.emplace(std::array<long long, 5>{a, b, c, d, e},
                                       static_cast<int>(ids.size()));
        (void)fresh;
        return it->second;
    }
};

struct IntUF {
    std::vector<int> p;
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) {
        grow(std::max(a, b));
        p[find(a)] = find(b);
    }
    void grow(int m) {
        while (static_cast<int>(p.size()) <= m) p.push_back(static_cast<int>(p.size()));
    }
};

} // namespace

CellDecomposition decompose_complement(const Triangulation& tri, const StandardVector& surface) {
    if (!is_admissible(surface)) throw std::runtime_error("crush: surface not admissible");
    if (7 * tri.size() != static_cast<int>(surface.v.size()))
        throw std::runtime_error("crush: surface vector has the wrong length");
    Skeleton sk(tri);
    Regions rg(tri, sk, surface);

    // glue regions across faces; a closed normal surface has no boundary arcs
    LocalUF uf(rg.n_regions);
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!tri.is_glued(t, f)) {
                for (int v : face_vertices(f))
                    if (rg.arcs_at(t, f, v) != 0)
                        throw std::runtime_error("crush: surface is not closed");
                continue;
            }
            const Gluing& g = *tri.gluing(t, f);
            int t2 = g.tet, f2 = g.perm[f];
            if (FaceSlot{t2, f2} < FaceSlot{t, f}) continue;
            for (int v : face_vertices(f)) {
                long long cnt = rg.arcs_at(t, f, v);
                if (cnt != rg.arcs_at(t2, f2, g.perm[v]))
                    throw std::runtime_error("crush: surface fails the matching equations");
                for (long long d = 0; d < cnt; ++d)
                    uf.unite(rg.behind(t, f, v, d), rg.behind(t2, f2, g.perm[v], d));
            }
            uf.unite(rg.hex(t, f), rg.hex(t2, f2));
        }

    // the component away from the vertices
    std::set<long long> vertex_roots;
    for (int t = 0; t < tri.size(); ++t)
        for (int v = 0; v < 4; ++v) {
            long long r = rg.x[t][v] > 0 ? rg.corner(t, v, 0)
                          : rg.y[t]      ? rg.prism(t, rg.side_of(t, v))
                                         : rg.central(t);
            vertex_roots.insert(uf.find(r));
        }
    std::set<long long> all_roots;
    for (long long r = 0; r < rg.n_regions; ++r) all_roots.insert(uf.find(r));
    long long xroot = -1;
    for (long long r : all_roots)
        if (!vertex_roots.count(r)) {
            if (xroot >= 0)
                throw std::runtime_error("crush: vertex-free complement component is ambiguous");
            xroot = r;
        }
    if (xroot < 0)
        throw std::runtime_error("crush: every complement component touches a vertex");
    auto in_x = [&](long long r) { return uf.find(r) == xroot; };

    CellDecomposition dec;
    dec.cells.resize(tri.size());
    std::vector<std::array<bool, 2>> prism_in_x(tri.size(), {false, false});
    std::vector<bool> core(tri.size(), false);
    for (int t = 0; t < tri.size(); ++t) {
        for (int v = 0; v < 4; ++v)
            for (long long d = 1; d < rg.x[t][v]; ++d)
                if (in_x(rg.corner(t, v, d))) dec.cells[t].push_back(CellKind::TriangleBlock);
        if (rg.y[t] == 0) {
            if (in_x(rg.central(t))) {
                dec.cells[t].push_back(CellKind::TruncatedTetrahedron);
                dec.core_tets.push_back(t);
                core[t] = true;
            }
        } else {
            for (int s = 0; s < 2; ++s)
                if (in_x(rg.prism(t, s))) {
                    dec.cells[t].push_back(CellKind::TruncatedPrism);
                    prism_in_x[t][s] = true;
                }
            for (long long g = 1; g < rg.y[t]; ++g)
                if (in_x(rg.gap(t, g))) dec.cells[t].push_back(CellKind::QuadBlock);
        }
    }

    // walk Gamma from the hexagonal faces of the truncated tetrahedra
    std::vector<std::array<bool, 2>> prism_seen(tri.size(), {false, false});
    std::set<std::pair<int, int>> assigned;
    for (int tc : dec.core_tets)
        for (int f = 0; f < 4; ++f) {
            if (assigned.count({tc, f})) continue;
            if (!tri.is_glued(tc, f))
                throw std::runtime_error("crush: truncated-tetrahedron face on the boundary");
            const Gluing& g0 = *tri.gluing(tc, f);
            int ct = g0.tet, cf = g0.perm[f];
            Perm4 acc = g0.perm;
            Chain chain;
            chain.from = {tc, f};
            long long guard = 0;
            for (;;) {
                if (++guard > 8 * rg.n_regions + 8)
                    throw std::runtime_error("crush: chain walk failed to terminate");
                if (core[ct]) {
                    chain.to = {ct, cf};
                    chain.perm = acc;
                    break;
                }
                // a truncated prism entered through one hexagonal face
                long long r = rg.hex(ct, cf);
                if (!in_x(r) || rg.y[ct] == 0)
                    throw std::runtime_error("crush: chain left the complement component");
                int s = 1 - rg.side_of(ct, cf);
                prism_seen[ct][s] = true;
                chain.prisms.push_back(ct);
                int cf2 = rg.partner(ct, cf); // the other hexagonal face
                acc = Perm4::transposition(cf, cf2) * acc;
                if (!tri.is_glued(ct, cf2))
                    throw std::runtime_error("crush: chain reaches the boundary");
                const Gluing& g = *tri.gluing(ct, cf2);
                acc = g.perm * acc;
                ct = g.tet;
                cf = g.perm[cf2];
            }
            assigned.insert({chain.from.tet, chain.from.face});
            assigned.insert({chain.to.tet, chain.to.face});
            dec.chains.push_back(std::move(chain));
        }
    for (int t = 0; t < tri.size(); ++t)
        for (int s = 0; s < 2; ++s)
            if (prism_in_x[t][s] && !prism_seen[t][s]) dec.simple = false;

    // the product part P(C_X): blocks, trapezoids and vertical edge segments
    KeyIds pid;
    IntUF puf;
    std::vector<std::vector<std::array<long long, 5>>> pcells; // member cells per id
    auto pnode = [&](std::array<long long, 5> key) {
        int id = pid.get(key[0], key[1], key[2], key[3], key[4]);
        puf.grow(id);
        while (static_cast<int>(pcells.size()) <= id) pcells.emplace_back();
        if (pcells[id].empty()) pcells[id].push_back(key);
        return id;
    };
    // tags: 0 block (region id), 1 trapezoid (t,f,v,d), 2 segment (class,pos)
    auto canon_trap = [&](int t, int f, int v, long long d) -> std::array<long long, 5> {
        if (tri.is_glued(t, f)) {
            const Gluing& g = *tri.gluing(t, f);
            if (FaceSlot{g.tet, g.perm[f]} < FaceSlot{t, f})
                return {1, g.tet, g.perm[f], g.perm[v], d};
        }
        return {1, t, f, v, d};
    };
    auto seg_key = [&](int t, int v, int w, long long p) -> std::array<long long, 5> {
        int m1 = std::min(v, w), m2 = std::max(v, w);
        long long total = rg.points_on(t, m1, m2);
        long long asc = v < w ? p : total - p;
        long long cls = sk.edge_sign(t, m1, m2) > 0 ? asc : total - asc;
        return {2, sk.edge_class(t, m1, m2), cls, 0, 0};
    };
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (tri.is_glued(t, f)) {
                const Gluing& g = *tri.gluing(t, f);
                if (FaceSlot{g.tet, g.perm[f]} < FaceSlot{t, f}) continue;
            }
            for (int v : face_vertices(f)) {
                long long cnt = rg.arcs_at(t, f, v);
                for (long long d = 1; d < cnt; ++d) {
                    long long r = rg.behind(t, f, v, d);
                    if (!in_x(r)) continue;
                    int tr = pnode(canon_trap(t, f, v, d));
                    std::array<int, 2> w{-1, -1};
                    int idx = 0;
                    for (int u : face_vertices(f))
                        if (u != v) w[idx++] = u;
                    for (int u : w) puf.unite(tr, pnode(seg_key(t, v, u, d)));
                    // adjacent blocks on both sides of the face
                    auto is_block = [&](int tt, long long rr) {
                        long long off = rr - rg.base[tt];
                        if (off < rg.central_off[tt]) return true; // triangle gap
                        return rg.y[tt] > 0 && rr != rg.prism(tt, 0) && rr != rg.prism(tt, 1);
                    };
                    if (is_block(t, r)) puf.unite(tr, pnode({0, r, 0, 0, 0}));
                    if (tri.is_glued(t, f)) {
                        const Gluing& g = *tri.gluing(t, f);
                        long long r2 = rg.behind(g.tet, g.perm[f], g.perm[v], d);
                        if (is_block(g.tet, r2)) puf.unite(tr, pnode({0, r2, 0, 0, 0}));
                    }
                }
            }
        }
    // segments not reached through a trapezoid still belong to P(C_X)
    for (int k = 0; k < sk.n_edge_classes(); ++k) {
        const EdgeSlot& rep = sk.edge_info(k).slots.front();
        int m1 = std::min(rep.a, rep.b), m2 = std::max(rep.a, rep.b);
        long long total = rg.points_on(rep.tet, m1, m2);
        for (long long p = 1; p < total; ++p)
            if (in_x(rg.along_edge(rep.tet, m1, m2, p))) pnode(seg_key(rep.tet, m1, m2, p));
    }

    // group P-cells by component
    std::map<int, std::vector<std::array<long long, 5>>> groups;
    for (int id = 0; id < static_cast<int>(pcells.size()); ++id)
        if (!pcells[id].empty()) groups[puf.find(id)].push_back(pcells[id].front());

    // each component must meet S in two pieces, each of Euler characteristic 1
    auto canon_arc = [&](int t, int f, int v, long long d) -> std::array<long long, 5> {
        auto key = canon_trap(t, f, v, d);
        key[0] = 4; // arc tag
        return key;
    };
    auto point_key = [&](int t, int v, int w, long long p) -> std::array<long long, 5> {
        int m1 = std::min(v, w), m2 = std::max(v, w);
        long long total = rg.points_on(t, m1, m2);
        long long asc = v < w ? p : total + 1 - p;
        long long cls = sk.edge_sign(t, m1, m2) > 0 ? asc : total + 1 - asc;
        return {5, sk.edge_class(t, m1, m2), cls, 0, 0};
    };
    for (auto& [root, members] : groups) {
        KeyIds hid;
        IntUF huf;
        std::vector<int> tag; // 3 disc, 4 arc, 5 point, per id
        auto hnode = [&](std::array<long long, 5> key) {
            int id = hid.get(key[0], key[1], key[2], key[3], key[4]);
            huf.grow(id);
            while (static_cast<int>(tag.size()) <= id) tag.push_back(0);
            tag[id] = static_cast<int>(key[0]);
            return id;
        };
        // disc keys: {3, t, 0, v, i} triangles, {3, t, 1, 0, j} quads
        auto tri_disc_side = [&](int t, int v, long long i) {
            int d = hnode({3, t, 0, v, i});
            for (int f = 0; f < 4; ++f)
                if (f != v) huf.unite(d, hnode(canon_arc(t, f, v, i)));
        };
        auto quad_disc_side = [&](int t, long long j) {
            int d = hnode({3, t, 1, 0, j});
            for (int f = 0; f < 4; ++f) {
                int v = rg.partner(t, f);
                huf.unite(d, hnode(canon_arc(t, f, v, rg.quad_depth(t, v, j))));
            }
        };
        for (const auto& key : members) {
            if (key[0] == 0) {
                long long r = key[1];
                // locate the block: which tet and kind
                int t = static_cast<int>(std::upper_bound(rg.base.begin(), rg.base.end(), r) -
                                         rg.base.begin()) -
                        1;
                long long off = r - rg.base[t];
                if (off < rg.central_off[t]) {
                    int v = 3;
                    while (off < rg.corner_off[t][v]) --v;
                    long long d = off - rg.corner_off[t][v];
                    tri_disc_side(t, v, d);     // bottom disc (index d, 1-based)
                    tri_disc_side(t, v, d + 1); // top disc
                } else {
                    long long g = off - rg.central_off[t];
                    quad_disc_side(t, g);
                    quad_disc_side(t, g + 1);
                }
            } else if (key[0] == 1) {
                int t = static_cast<int>(key[1]), f = static_cast<int>(key[2]),
                    v = static_cast<int>(key[3]);
                long long d = key[4];
                std::array<int, 2> w{-1, -1};
                int idx = 0;
                for (int u : face_vertices(f))
                    if (u != v) w[idx++] = u;
                for (long long dd : {d, d + 1}) {
                    int a = hnode(canon_arc(t, f, v, dd));
                    for (int u : w) huf.unite(a, hnode(point_key(t, v, u, dd)));
                }
            } else {
                // segment between class points p and p+1
                hnode({5, key[1], key[2], 0, 0});
                hnode({5, key[1], key[2] + 1, 0, 0});
            }
        }
        std::map<int, std::array<long long, 3>> counts; // V, E, F per side
        for (const auto& [key, id] : hid.ids) {
            int r = huf.find(id);
            if (tag[id] == 3)
                counts[r][2] += 1;
            else if (tag[id] == 4)
                counts[r][1] += 1;
            else
                counts[r][0] += 1;
        }
        ProductPiece piece;
        for (const auto& [r, c] : counts) piece.side_chis.push_back(c[0] - c[1] + c[2]);
        if (piece.side_chis.size() != 2 || piece.side_chis[0] != 1 || piece.side_chis[1] != 1)
            dec.trivial_product = false;
        dec.product_pieces.push_back(std::move(piece));
    }

    return dec;
}

CrushResult crush_along(const Triangulation& tri, const StandardVector& surface) {
    CellDecomposition dec = decompose_complement(tri, surface);
    if (dec.core_tets.empty())
        throw std::runtime_error("crush: no truncated tetrahedron away from the vertex");
    if (!dec.simple) throw std::runtime_error("crush: a Gamma component is a circle");
    if (!dec.trivial_product)
        throw std::runtime_error("crush: P(C_X) is not a trivial combinatorial product");

    CrushResult res;
    res.core_tets = dec.core_tets;
    res.tet_map.assign(tri.size(), -1);
    for (int i = 0; i < static_cast<int>(dec.core_tets.size()); ++i)
        res.tet_map[dec.core_tets[i]] = i;
    Triangulation out(static_cast<int>(dec.core_tets.size()));
    for (const Chain& c : dec.chains)
        out.glue(res.tet_map[c.from.tet], c.from.face, res.tet_map[c.to.tet], c.perm);
    for (int t = 0; t < out.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!out.is_glued(t, f))
                throw std::runtime_error("crush: result has an unglued face");
    out.validate();
    Skeleton sk(out);
    if (sk.kind() != TriKind::Ideal || sk.n_vertex_classes() != 1)
        throw std::runtime_error("crush: result is not a one-vertex ideal triangulation");
    res.ideal = std::move(out);
    return res;
}

} // namespace spunfib
