#include "spunfib/homology.hpp"

namespace spunfib {

int integer_rank(std::vector<std::vector<mpz_class>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpz_class g = gcd(m[r][c], m[i][c]);
            mpz_class a = m[i][c] / g, b = m[r][c] / g;
            for (size_t j = c; j < cols; ++j) m[i][j] = b * m[i][j] - a * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

int first_betti(const Skeleton& sk) {
    const Triangulation& T = sk.tri();
    int n = T.size();

    // 0-cells: material vertex classes, and link vertices of ideal classes.
    std::vector<bool> ideal(sk.n_vertex_classes());
    for (int k = 0; k < sk.n_vertex_classes(); ++k) ideal[k] = sk.vertex_info(k).ideal;

    std::vector<int> vcell(sk.n_vertex_classes(), -1);
    std::vector<int> lvcell(sk.n_link_vertices(), -1);
    int n0 = 0;
    for (int k = 0; k < sk.n_vertex_classes(); ++k)
        if (!ideal[k]) vcell[k] = n0++;
    for (int i = 0; i < sk.n_link_vertices(); ++i)
        if (ideal[sk.link_vertex_vclass(i)]) lvcell[i] = n0++;

    // 1-cells: edge classes, and link edges of ideal classes.
    int ne = sk.n_edge_classes();
    std::vector<int> arccell(sk.n_link_edges(), -1);
    int n1 = ne;
    for (int i = 0; i < sk.n_link_edges(); ++i) {
        auto [t, v, f] = sk.link_edge_rep(i);
        if (ideal[sk.vertex_class(t, v)]) arccell[i] = n1++;
    }

    // d1: n0 x n1
    std::vector<std::vector<mpz_class>> d1(n0, std::vector<mpz_class>(n1, 0));
    auto end_cell = [&](int t, int v, int w) {
        int k = sk.vertex_class(t, v);
        return ideal[k] ? lvcell[sk.link_vertex(t, v, w)] : vcell[k];
    };
    for (int k = 0; k < ne; ++k) {
        const EdgeSlot& s = sk.edge_info(k).slots.front();
        int head = end_cell(s.tet, s.b, s.a);
        int tail = end_cell(s.tet, s.a, s.b);
        d1[head][k] += 1;
        d1[tail][k] -= 1;
    }
    for (int i = 0; i < sk.n_link_edges(); ++i) {
        if (arccell[i] < 0) continue;
        auto [t, v, f] = sk.link_edge_rep(i);
        int x = -1, y = -1;
        for (int u = 0; u < 4; ++u)
            if (u != v && u != f) (x < 0 ? x : y) = u;
        d1[lvcell[sk.link_vertex(t, v, y)]][arccell[i]] += 1;
        d1[lvcell[sk.link_vertex(t, v, x)]][arccell[i]] -= 1;
    }

    // 2-cells: face classes (truncated triangles) and ideal link triangles.
    std::vector<std::vector<mpz_class>> d2;
    std::vector<bool> face_done(sk.n_face_classes(), false);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            int fc = sk.face_class(t, f);
            if (face_done[fc]) continue;
            face_done[fc] = true;
            std::vector<mpz_class> row(n1, 0);
            auto vs = face_vertices(f); // ascending x,y,z; traverse x->y->z->x
            for (int i = 0; i < 3; ++i) {
                int a = vs[i], b = vs[(i + 1) % 3], c = vs[(i + 2) % 3];
                // edge a->b
                row[sk.edge_class(t, a, b)] += sk.edge_sign(t, a, b);
                // then the arc at corner b (from the a side to the c side)
                if (ideal[sk.vertex_class(t, b)]) {
                    int id = sk.link_edge(t, b, f);
                    int s = sk.link_edge_sign(t, b, f) * (a < c ? 1 : -1);
                    row[arccell[id]] += s;
                }
            }
            d2.push_back(std::move(row));
        }
    // link triangles: one per corner slot of an ideal vertex
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) {
            if (!ideal[sk.vertex_class(t, v)]) continue;
            std::vector<mpz_class> row(n1, 0);
            auto ws = face_vertices(v); // the three corners, ascending
            for (int i = 0; i < 3; ++i) {
                int a = ws[i], b = ws[(i + 1) % 3];
                int f = 6 - v - a - b; // face containing v, a, b
                int id = sk.link_edge(t, v, f);
                int s = sk.link_edge_sign(t, v, f) * (a < b ? 1 : -1);
                row[arccell[id]] += s;
            }
            d2.push_back(std::move(row));
        }

    int r1 = integer_rank(d1);
    // transpose not needed; rank(d2) over the same column space
    int r2 = integer_rank(d2);
    return n1 - r1 - r2;
}

} // namespace spunfib
