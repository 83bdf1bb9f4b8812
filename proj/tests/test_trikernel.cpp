#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spunfib/homology.hpp"
#include "spunfib/isomorphism.hpp"
#include "spunfib/skeleton.hpp"
#include "spunfib/triangulation.hpp"

using namespace spunfib;

static Triangulation load(const char* name) {
    return Triangulation::parse_file(std::string(TEST_DATA_DIR) + "/" + name);
}

TEST_CASE("parse and round-trip the trefoil table") {
    Triangulation t = load("table1.txt");
    CHECK(t.size() == 2);
    t.validate();
    // (012) of tet 0 -> tet 1 with map 0->2,1->1,2->0,3->3
    const Gluing& g = *t.gluing(0, 3);
    CHECK(g.tet == 1);
    CHECK(g.perm == Perm4(2, 1, 0, 3));
    // serialized table re-parses to the same triangulation
    Triangulation t2 = Triangulation::parse(t.to_table());
    CHECK(t2.to_table() == t.to_table());
}

TEST_CASE("parser accepts 4-digit and colon forms") {
    Triangulation t = Triangulation::parse(
        "0 | 1:2103 1:0321 1:0132 1:0132\n"
        "1 | 0:2103 0:0321 0:0132 0:0132\n");
    t.validate();
    Triangulation ref = load("table1.txt");
    CHECK(is_isomorphic(t, ref));
}

TEST_CASE("validation failures are reported") {
    // inconsistent mirror gluing
    CHECK_THROWS(Triangulation::parse("0 | (1)(210) - - -\n"
                                      "1 | (0)(120) - - -\n")
                     .validate());
    // non-orientable: a self-gluing with an even permutation forces the
    // tetrahedron's sign to agree with itself across an orientation-reversing map
    Triangulation t(1);
    t.glue(0, 3, 0, Perm4(2, 3, 0, 1)); // even, maps face 3 to face 1
    CHECK_THROWS(t.validate());
}

TEST_CASE("trefoil skeleton counts") {
    Triangulation t = load("table1.txt");
    t.validate();
    Skeleton sk(t);
    CHECK(sk.kind() == TriKind::Ideal);
    CHECK(sk.n_vertex_classes() == 1);
    CHECK(sk.n_edge_classes() == 2);
    CHECK(sk.n_face_classes() == 4);
    const VertexLink& link = sk.vertex_link(0);
    CHECK(link.closed);
    CHECK(link.chi == 0);
    CHECK(link.triangles.size() == 8);
    CHECK(link.n_link_vertices == 4);
    CHECK(link.n_link_edges == 12);
    sk.validate_links();
    // both edge classes of a 2-tet 1-vertex ideal triangulation have degree 6
    CHECK(sk.edge_info(0).degree + sk.edge_info(1).degree == 12);
}

TEST_CASE("K12n242 skeleton counts") {
    Triangulation t = load("table5.txt");
    t.validate();
    Skeleton sk(t);
    CHECK(sk.kind() == TriKind::Ideal);
    CHECK(sk.n_vertex_classes() == 1);
    CHECK(sk.n_edge_classes() == 3);
    const VertexLink& link = sk.vertex_link(0);
    CHECK(link.closed);
    CHECK(link.chi == 0);
    CHECK(link.triangles.size() == 12);
}

TEST_CASE("material short inflation skeleton") {
    Triangulation t = load("table3.txt");
    t.validate();
    Skeleton sk(t);
    CHECK(sk.kind() == TriKind::Material);
    CHECK(t.boundary_faces().size() == 2);
    CHECK(sk.n_vertex_classes() == 1);
    const VertexLink& link = sk.vertex_link(0);
    CHECK_FALSE(link.closed);
    CHECK(link.chi == 1);
    sk.validate_links();
    // the two unglued faces triangulate a torus: three boundary edge classes,
    // each appearing twice among boundary face sides
    std::vector<int> bdeg, tdeg;
    for (int k = 0; k < sk.n_edge_classes(); ++k) {
        int deg = 0;
        for (auto [bt, bf] : t.boundary_faces())
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (a != bf && b != bf && sk.edge_class(bt, a, b) == k) ++deg;
        if (deg) {
            bdeg.push_back(deg);
            tdeg.push_back(sk.edge_info(k).degree);
        }
    }
    std::sort(bdeg.begin(), bdeg.end());
    std::sort(tdeg.begin(), tdeg.end());
    CHECK(bdeg == std::vector<int>{2, 2, 2});
    CHECK(tdeg == std::vector<int>{2, 3, 3});
}

TEST_CASE("first Betti numbers") {
    for (const char* name : {"table1.txt", "table3.txt", "table4.txt"}) {
        Triangulation t = load(name);
        Skeleton sk(t);
        CHECK_MESSAGE(first_betti(sk) == 1, name);
    }
    Triangulation k12 = load("table5.txt");
    Skeleton sk(k12);
    CHECK(first_betti(sk) == 1);
}

TEST_CASE("isomorphism: relabelled tables match, distinct ones do not") {
    Triangulation a = load("table1.txt");
    // swap the two tetrahedra and relabel vertices of tet 0 by an even perm
    Triangulation b(2);
    Perm4 rel(2, 3, 0, 1); // even relabel applied to tet 1 of the new table
    for (int f = 0; f < 4; ++f) {
        const Gluing& g = *a.gluing(0, f);
        // new tet 1 = old tet 0 relabelled; new tet 0 = old tet 1
        if (!b.is_glued(1, rel[f])) b.glue(1, rel[f], g.tet == 0 ? 1 : 0, g.perm * rel.inverse());
    }
    b.validate();
    CHECK(is_isomorphic(a, b));
    CHECK_FALSE(is_isomorphic(a, load("table5.txt")));
    CHECK(is_isomorphic(load("table3.txt"), load("table3.txt")));
}
