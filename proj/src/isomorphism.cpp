#include "spunfib/isomorphism.hpp"

#include <stdexcept>

namespace spunfib {

namespace {

// Encoding for one BFS rooted at (tet0, relabel0).  For each new-labelled
// tetrahedron and face in order, emit: 'x' for unglued, or the target's new
// index and the new gluing permutation.
std::string encode(const Triangulation& T, int tet0, const Perm4& rel0) {
    int n = T.size();
    std::vector<int> new_of(n, -1);   // old -> new index
    std::vector<int> old_of(n, -1);   // new -> old index
    std::vector<Perm4> rel(n);        // old vertex -> new vertex, per old tet
    new_of[tet0] = 0;
    old_of[0] = tet0;
    rel[tet0] = rel0;
    int assigned = 1;

    std::string out;
    out.reserve(static_cast<size_t>(n) * 12);
    for (int i = 0; i < assigned && i < n; ++i) {
        int t = old_of[i];
        for (int f = 0; f < 4; ++f) {
            // face f in NEW labels; corresponding old face:
            int of = rel[t].inverse()[f];
            if (!T.is_glued(t, of)) {
                out += 'x';
                continue;
            }
            const Gluing& g = *T.gluing(t, of);
            if (new_of[g.tet] < 0) {
                new_of[g.tet] = assigned;
                old_of[assigned] = g.tet;
                // choose the new labelling of the target so the gluing reads as
                // the identity permutation
                rel[g.tet] = rel[t] * g.perm.inverse();
                ++assigned;
            }
            Perm4 np = rel[g.tet] * g.perm * rel[t].inverse();
            out += static_cast<char>('A' + new_of[g.tet]);
            out += np.str();
        }
    }
    if (assigned != n) throw std::runtime_error("canonical_form: triangulation not connected");
    return out;
}

} // namespace

std::string canonical_form(const Triangulation& tri) {
    if (tri.size() == 0) return "";
    std::string best;
    for (int t = 0; t < tri.size(); ++t)
        for (const Perm4& p : Perm4::all()) {
            std::string e = encode(tri, t, p);
            if (best.empty() || e < best) best = e;
        }
    return best;
}

bool is_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.size() != b.size()) return false;
    if (a.size() == 0) return true;
    return canonical_form(a) == canonical_form(b);
}

} // namespace spunfib
