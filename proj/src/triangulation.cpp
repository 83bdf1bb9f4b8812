#include "spunfib/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spunfib {

const std::array<Perm4, 24>& Perm4::all() {
    static const std::array<Perm4, 24> table = [] {
        std::array<Perm4, 24> t;
        int n = 0;
        std::array<uint8_t, 4> v{0, 1, 2, 3};
        do {
            t[n++] = Perm4(v);
        } while (std::next_permutation(v.begin(), v.end()));
        return t;
    }();
    return table;
}

std::array<int, 3> face_vertices(int face) {
    std::array<int, 3> v{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != face) v[n++] = i;
    return v;
}

void Triangulation::glue(int tet, int face, int dst, const Perm4& perm) {
    if (glue_[tet][face] || glue_[dst][perm[face]])
        throw std::runtime_error("glue: face already glued");
    if (dst == tet && perm[face] == face)
        throw std::runtime_error("glue: face glued to itself");
    glue_[tet][face] = Gluing{dst, perm};
    glue_[dst][perm[face]] = Gluing{tet, perm.inverse()};
}

void Triangulation::unglue(int tet, int face) {
    if (!glue_[tet][face]) return;
    Gluing g = *glue_[tet][face];
    glue_[g.tet][g.perm[face]].reset();
    glue_[tet][face].reset();
}

void Triangulation::validate() const {
    for (int t = 0; t < size(); ++t) {
        for (int f = 0; f < 4; ++f) {
            if (!glue_[t][f]) continue;
            const Gluing& g = *glue_[t][f];
            if (g.tet < 0 || g.tet >= size())
                throw std::runtime_error("validate: gluing target out of range");
            int df = g.perm[f];
            if (g.tet == t && df == f)
                throw std::runtime_error("validate: face glued to itself");
            const auto& back = glue_[g.tet][df];
            if (!back)
                throw std::runtime_error("validate: gluing not mirrored");
            if (back->tet != t || back->perm * g.perm != Perm4())
                throw std::runtime_error("validate: gluings are not inverse pairs");
        }
    }
    if (!is_orientable())
        throw std::runtime_error("validate: triangulation is not orientable");
}

bool Triangulation::is_orientable() const {
    try {
        orientations();
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

std::vector<int> Triangulation::orientations() const {
    // A gluing between coherently oriented tetrahedra is an odd permutation.
    std::vector<int> sign(size(), 0);
    for (int start = 0; start < size(); ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                if (!glue_[t][f]) continue;
                const Gluing& g = *glue_[t][f];
                int want = (g.perm.sign() == -1) ? sign[t] : -sign[t];
                if (sign[g.tet] == 0) {
                    sign[g.tet] = want;
                    stack.push_back(g.tet);
                } else if (sign[g.tet] != want) {
                    throw std::runtime_error("triangulation is not orientable");
                }
            }
        }
    }
    return sign;
}

std::vector<FaceSlot> Triangulation::boundary_faces() const {
    std::vector<FaceSlot> out;
    for (int t = 0; t < size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!glue_[t][f]) out.push_back({t, f});
    return out;
}

namespace {

// Face index whose ascending vertex list is (abc).
int face_from_vertices(int a, int b, int c) {
    return 6 - a - b - c;
}

} // namespace

std::string Triangulation::to_table() const {
    // Columns in the order (012) (013) (023) (123), i.e. faces 3,2,1,0.
    std::ostringstream os;
    for (int t = 0; t < size(); ++t) {
        os << t << " |";
        for (int col = 0; col < 4; ++col) {
            int f = 3 - col;
            os << ' ';
            if (!glue_[t][f]) {
                os << '-';
            } else {
                const Gluing& g = *glue_[t][f];
                os << g.tet << ':' << g.perm.str();
            }
        }
        os << '\n';
    }
    return os.str();
}

Triangulation Triangulation::parse(const std::string& text) {
    // Per-line format:  <index> | <f012> <f013> <f023> <f123>
    // Entry: '-' or <tet>:<p0p1p2p3>, also <tet>:<abc>, (<tet>)(<abc>) or <tet> (<abc>).
    struct Entry {
        bool glued = false;
        int tet = 0;
        std::string digits;
    };
    std::vector<std::array<Entry, 4>> rows;

    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        // strip comments
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        // tokenize, treating '|', '(' and ')' as separators
        std::string cooked;
        for (char c : line)
            cooked += (c == '|' || c == '(' || c == ')' || c == ':') ? ' ' : c;
        std::istringstream ls(cooked);
        std::vector<std::string> tok;
        std::string s;
        while (ls >> s) tok.push_back(s);
        if (tok.empty()) continue;

        int index = std::stoi(tok[0]);
        if (index != static_cast<int>(rows.size()))
            throw std::runtime_error("parse: tetrahedron indices must be consecutive from 0");
        std::array<Entry, 4> row;
        size_t pos = 1;
        for (int col = 0; col < 4; ++col) {
            if (pos >= tok.size()) throw std::runtime_error("parse: missing face entry");
            if (tok[pos] == "-") {
                ++pos;
                continue;
            }
            Entry e;
            e.glued = true;
            e.tet = std::stoi(tok[pos++]);
            if (pos >= tok.size()) throw std::runtime_error("parse: missing permutation");
            e.digits = tok[pos++];
            if (e.digits.size() != 3 && e.digits.size() != 4)
                throw std::runtime_error("parse: permutation must have 3 or 4 digits");
            for (char c : e.digits)
                if (c < '0' || c > '3') throw std::runtime_error("parse: bad permutation digit");
            row[col] = e;
        }
        if (pos != tok.size()) throw std::runtime_error("parse: trailing tokens on row");
        rows.push_back(row);
    }

    Triangulation tri(static_cast<int>(rows.size()));
    for (int t = 0; t < tri.size(); ++t) {
        for (int col = 0; col < 4; ++col) {
            const Entry& e = rows[t][col];
            if (!e.glued) continue;
            int f = 3 - col; // column (012) is face 3, etc.
            Perm4 perm;
            if (e.digits.size() == 4) {
                perm = Perm4(e.digits[0] - '0', e.digits[1] - '0', e.digits[2] - '0',
                             e.digits[3] - '0');
            } else {
                // Images of the face's vertices in ascending order; the opposite
                // vertex goes to the vertex opposite the target face.
                auto src = face_vertices(f);
                std::array<int, 4> img{-1, -1, -1, -1};
                for (int i = 0; i < 3; ++i) img[src[i]] = e.digits[i] - '0';
                int dst_face = face_from_vertices(e.digits[0] - '0', e.digits[1] - '0',
                                                  e.digits[2] - '0');
                img[f] = dst_face;
                perm = Perm4(img[0], img[1], img[2], img[3]);
            }
            if (e.tet < 0 || e.tet >= tri.size())
                throw std::runtime_error("parse: gluing target out of range");
            // Record one direction only; expect the table to contain the mirror.
            if (!tri.glue_[t][f]) {
                tri.glue_[t][f] = Gluing{e.tet, perm};
            }
        }
    }
    // Cross-check mirrors (validate() gives clearer errors later; here just fill).
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (tri.glue_[t][f]) {
                const Gluing& g = *tri.glue_[t][f];
                auto& back = tri.glue_[g.tet][g.perm[f]];
                if (!back) back = Gluing{t, g.perm.inverse()};
            }
    return tri;
}

Triangulation Triangulation::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace spunfib
