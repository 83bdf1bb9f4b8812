#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spunfib/cone.hpp>

using namespace spunfib;

namespace {

Triangulation load(const std::string& name) {
    return Triangulation::parse_file(std::string(TEST_DATA_DIR) + "/" + name);
}

bool same_rays(const VertexSolutionSet& a, const VertexSolutionSet& b) {
    if (a.rays.size() != b.rays.size()) return false;
    for (size_t i = 0; i < a.rays.size(); ++i)
        if (!(a.rays[i] == b.rays[i])) return false;
    return true;
}

} // namespace

TEST_CASE("free cone gives the unit rays") {
    Triangulation lone(1);
    MatchingSystem sys = standard_matching_system(lone);
    VertexSolutionSet dd = enumerate_vertex_solutions(sys, standard_quad_blocks(1));
    CHECK(dd.rays.size() == 7);
    for (const RayBasis& r : dd.rays) {
        CHECK(r.support.size() == 1);
        CHECK(r.vec[r.support[0]] == 1);
    }
    VertexSolutionSet bf = brute_force_rays(sys, standard_quad_blocks(1), 2);
    CHECK(same_rays(dd, bf));
}

TEST_CASE("single forced ray") {
    MatchingSystem sys;
    sys.cols = 2;
    sys.rows = {{1, -1}};
    sys.labels = {"toy"};
    VertexSolutionSet dd = enumerate_vertex_solutions(sys, {});
    REQUIRE(dd.rays.size() == 1);
    CHECK(dd.rays[0].vec == std::vector<Int>{1, 1});
    VertexSolutionSet bf = brute_force_rays(sys, {}, 3);
    CHECK(same_rays(dd, bf));
}

TEST_CASE("oracle equivalence on small triangulations") {
    for (const char* name : {"table1.txt", "table5.txt"}) {
        Triangulation t = load(name);
        auto [qsys, senses] = q_matching_system(t);
        VertexSolutionSet dd = enumerate_vertex_solutions(qsys, quad_quad_blocks(t.size()));
        VertexSolutionSet bf = brute_force_rays(qsys, quad_quad_blocks(t.size()), 4);
        CHECK(same_rays(dd, bf));

        MatchingSystem ssys = standard_matching_system(t);
        VertexSolutionSet sdd = enumerate_vertex_solutions(ssys, standard_quad_blocks(t.size()));
        VertexSolutionSet sbf = brute_force_rays(ssys, standard_quad_blocks(t.size()), 4);
        CHECK(same_rays(sdd, sbf));
        CHECK(!sdd.rays.empty());


        // every ray satisfies the system exactly and is admissible
        for (const RayBasis& r : sdd.rays) {
            CHECK(ssys.satisfies(r.vec));
            StandardVector x;
            x.v = r.vec;
            CHECK(is_admissible(x));
        }
        // support minimality among the emitted rays
        for (const RayBasis& a : sdd.rays)
            for (const RayBasis& b : sdd.rays)
                if (!(a == b))
                    CHECK(!std::includes(a.support.begin(), a.support.end(), b.support.begin(),
                                         b.support.end()));
    }
}

TEST_CASE("canonical extension recovers vertices from their quad parts") {
    Triangulation t = load("table2.txt");
    MatchingSystem ssys = standard_matching_system(t);
    VertexSolutionSet vs = enumerate_vertex_solutions(ssys, standard_quad_blocks(t.size()));
    CHECK(!vs.rays.empty());
    int with_quads = 0;
    for (const RayBasis& r : vs.rays) {
        StandardVector x;
        x.v = r.vec;
        QuadVector q = quad_projection(x);
        bool quads = false;
        for (const Int& e : q.v)
            if (e != 0) quads = true;
        if (!quads) continue;
        ++with_quads;
        // a vertex with quads carries no vertex-link summand, so it is the
        // minimal completion of its own quad part
        CHECK(canonical_extension(t, q) == x);
    }
    CHECK(with_quads > 0);

    // spun rays of an ideal triangulation admit no finite completion
    Triangulation ideal = load("table1.txt");
    QuadVector spun(2);
    spun.quad(0, 1) = 1;
    spun.quad(1, 2) = 1;
    auto [qsys, senses] = q_matching_system(ideal);
    REQUIRE(qsys.satisfies(spun));
    CHECK_THROWS(canonical_extension(ideal, spun));
}

TEST_CASE("scaling invariance") {
    Triangulation t = load("table1.txt");
    auto [sys, senses] = q_matching_system(t);
    MatchingSystem scaled = sys;
    for (auto& row : scaled.rows)
        for (Int& e : row) e *= 3;
    CHECK(same_rays(enumerate_vertex_solutions(sys, quad_quad_blocks(2)),
                    enumerate_vertex_solutions(scaled, quad_quad_blocks(2))));
}

TEST_CASE("trefoil fiber appears as a vertex solution of the short inflation") {
    Triangulation t = load("table3.txt");
    MatchingSystem sys = standard_matching_system(t);
    VertexSolutionSet vs = enumerate_vertex_solutions(sys, standard_quad_blocks(t.size()));
    CHECK(vs.rays.size() == 178);
    int once_punctured_tori = 0, fibers = 0, thin = 0;
    for (const RayBasis& r : vs.rays) {
        StandardVector x;
        x.v = r.vec;
        SurfaceTopology topo = surface_topology(t, x);
        if (topo.euler_characteristic == -1 && topo.component_count == 1 &&
            topo.boundary_curve_count == 1 && topo.orientable) {
            ++once_punctured_tori;
            if (is_thin_edge_link(t, x)) ++thin;
            if (topo.boundary_essential) {
                ++fibers;
                CHECK_FALSE(is_thin_edge_link(t, x));
            }
        }
    }
    // one once-punctured torus per interior edge (the link discs tubed along
    // the edge, all compressible: their boundary curve is null-homotopic in
    // the boundary torus) plus the fiber itself
    CHECK(once_punctured_tori == 12);
    CHECK(thin == 10);
    CHECK(fibers == 1);
}

TEST_CASE("candidate sums") {
    Triangulation t = load("table1.txt");
    auto [sys, senses] = q_matching_system(t);
    VertexSolutionSet vs = enumerate_vertex_solutions(sys, quad_quad_blocks(2));
    auto singles = candidate_sums(vs, quad_quad_blocks(2), 1);
    REQUIRE(singles.size() == vs.rays.size());
    for (size_t i = 0; i < singles.size(); ++i) CHECK(singles[i] == vs.rays[i].vec);

    auto pairs = candidate_sums(vs, quad_quad_blocks(2), 2);
    CHECK(pairs.size() >= singles.size());
    for (const auto& v : pairs) {
        QuadVector q;
        q.v = v;
        CHECK(is_admissible(q));
    }
}
