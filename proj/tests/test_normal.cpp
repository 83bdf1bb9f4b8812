#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spunfib/normal.hpp>

using namespace spunfib;

namespace {

Triangulation load(const std::string& name) {
    return Triangulation::parse_file(std::string(TEST_DATA_DIR) + "/" + name);
}

} // namespace

TEST_CASE("vector serialization round-trips") {
    StandardVector x(2);
    x.tri(0, 2) = 5;
    x.quad(1, 1) = Int("123456789012345678901234567890");
    StandardVector y = StandardVector::parse(x.str());
    CHECK(x == y);
    QuadVector q(3);
    q.quad(2, 0) = 7;
    CHECK(QuadVector::parse(q.str()) == q);
    CHECK_THROWS(StandardVector::parse("t0: [1,2,3]"));
}

TEST_CASE("standard matching system") {
    Triangulation t = load("table1.txt");
    MatchingSystem sys = standard_matching_system(t);
    CHECK(sys.rows.size() == 12); // 4 interior faces, 3 arc types each
    CHECK(sys.cols == 14);
    CHECK(sys.satisfies(StandardVector::vertex_linking(2)));

    // sum closure
    StandardVector dbl = StandardVector::vertex_linking(2);
    for (Int& e : dbl.v) e *= 2;
    CHECK(sys.satisfies(dbl));

    Triangulation lone(1);
    MatchingSystem empty = standard_matching_system(lone);
    CHECK(empty.rows.empty());
    CHECK(empty.cols == 7);
    StandardVector any(1);
    any.quad(0, 2) = 9;
    CHECK(empty.satisfies(any));
}

TEST_CASE("q matching system and senses") {
    Triangulation t = load("table1.txt");
    auto [sys, senses] = q_matching_system(t);
    CHECK(sys.rows.size() == 2);
    CHECK(sys.cols == 6);
    CHECK(sys.satisfies(QuadVector(2)));

    // every sense entry is a sum of corner signs on edges of its class
    Triangulation k = load("table5.txt");
    Skeleton sk(k);
    auto [ksys, kt] = q_matching_system(k);
    CHECK(ksys.rows.size() == 3);
    for (int cls = 0; cls < sk.n_edge_classes(); ++cls)
        for (int tet = 0; tet < k.size(); ++tet)
            for (int q = 0; q < 3; ++q) {
                const SenseEntry& e = kt.entries[cls][3 * tet + q];
                CHECK(e.sense >= -2);
                CHECK(e.sense <= 2);
                int total = 0;
                auto corners = quad_corner_edges(q);
                for (int c = 0; c < 4; ++c) {
                    total += e.corner_sign[c];
                    // corners on edges outside the class carry no sign
                    if (sk.edge_class(tet, corners[c][0], corners[c][1]) != cls)
                        CHECK(e.corner_sign[c] == 0);
                    else
                        CHECK(e.corner_sign[c] != 0);
                }
                CHECK(total == e.sense);
            }

    // one quad of this triangulation has three corners on a single edge
    // class; opposite corners twist oppositely, so the sense still stays in
    // [-2, 2] even then
    int three_corner = 0;
    for (int cls = 0; cls < sk.n_edge_classes(); ++cls)
        for (size_t j = 0; j < kt.entries[cls].size(); ++j) {
            int on = 0;
            for (int c = 0; c < 4; ++c)
                if (kt.entries[cls][j].corner_sign[c] != 0) ++on;
            if (on == 3) ++three_corner;
        }
    CHECK(three_corner > 0);

    // the two quad types meeting an edge twist in opposite senses per corner
    for (int cls = 0; cls < sk.n_edge_classes(); ++cls)
        for (int tet = 0; tet < k.size(); ++tet) {
            int sum = 0;
            for (int q = 0; q < 3; ++q) sum += kt.entries[cls][3 * tet + q].sense;
            CHECK(sum == 0);
        }
}

TEST_CASE("boundary equations") {
    Triangulation t = load("table3.txt");
    MatchingSystem sys = boundary_equations(t);
    CHECK(sys.rows.size() == 3);
    CHECK(sys.cols == 7 * 12);
    // support lies in the coordinates of the boundary tetrahedra 3 and 4
    for (const auto& row : sys.rows)
        for (int j = 0; j < sys.cols; ++j)
            if (row[j] != 0) CHECK((j / 7 == 3 || j / 7 == 4));
    // the vertex link (all-triangles) has matching arc counts on both faces
    CHECK(sys.satisfies(StandardVector::vertex_linking(12)));

    CHECK_THROWS(boundary_equations(load("table1.txt")));
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(QuadVector(4)));
    QuadVector bad(2);
    bad.quad(0, 0) = 1;
    bad.quad(0, 1) = 1;
    CHECK_FALSE(is_admissible(bad));
    // the trefoil fiber quad triples in the final ideal triangulation
    QuadVector fiber = QuadVector::parse(
        "t0: [0,1,0]\nt1: [0,0,1]\nt2: [0,0,0]\nt3: [0,1,0]\nt4: [0,1,0]\n"
        "t5: [0,2,0]\nt6: [0,1,0]\nt7: [0,2,0]\nt8: [0,0,0]\nt9: [1,0,0]\n");
    CHECK(is_admissible(fiber));

    // admissibility is not closed under sums
    QuadVector u(1), v(1);
    u.quad(0, 0) = 1;
    v.quad(0, 1) = 1;
    QuadVector s(1);
    for (size_t i = 0; i < s.v.size(); ++i) s.v[i] = u.v[i] + v.v[i];
    CHECK(is_admissible(u));
    CHECK(is_admissible(v));
    CHECK_FALSE(is_admissible(s));
}

TEST_CASE("quad projection") {
    StandardVector x(2);
    x.tri(0, 0) = 3;
    x.quad(1, 2) = 4;
    QuadVector q = quad_projection(x);
    CHECK(q.quad(0, 0) == 0);
    CHECK(q.quad(1, 2) == 4);
    CHECK(quad_projection(StandardVector::vertex_linking(5)) == QuadVector(5));
}

TEST_CASE("surface topology of vertex links") {
    // ideal one-vertex triangulations: the link is a torus
    for (const char* name : {"table1.txt", "table5.txt"}) {
        Triangulation t = load(name);
        SurfaceTopology topo = surface_topology(t, StandardVector::vertex_linking(t.size()));
        CHECK(topo.euler_characteristic == 0);
        CHECK(topo.component_count == 1);
        CHECK(topo.boundary_curve_count == 0);
        CHECK(topo.orientable);
        CHECK(topo.chi_negative == 0);
    }

    // two parallel copies: two tori
    Triangulation t = load("table1.txt");
    StandardVector dbl = StandardVector::vertex_linking(2);
    for (Int& e : dbl.v) e *= 2;
    SurfaceTopology topo = surface_topology(t, dbl);
    CHECK(topo.euler_characteristic == 0);
    CHECK(topo.component_count == 2);

    // material one-vertex triangulation: the link is a disc
    Triangulation m = load("table3.txt");
    SurfaceTopology disc = surface_topology(m, StandardVector::vertex_linking(12));
    CHECK(disc.euler_characteristic == 1);
    CHECK(disc.component_count == 1);
    CHECK(disc.boundary_curve_count == 1);
    CHECK(disc.chi_negative == 0);
    // each boundary arc type appears once in the link
    for (long long c : disc.arc_counts) CHECK(c == 1);

    // preconditions
    StandardVector off(2);
    off.tri(0, 0) = 1;
    CHECK_THROWS(surface_topology(t, off));
}
