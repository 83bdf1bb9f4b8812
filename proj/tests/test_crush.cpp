#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <spunfib/inflation.hpp>
#include <spunfib/isomorphism.hpp>

using namespace spunfib;

namespace {

Triangulation load(const std::string& name) {
    return Triangulation::parse_file(std::string(TEST_DATA_DIR) + "/" + name);
}

int count(const std::vector<Role>& roles, Role r) {
    int c = 0;
    for (Role x : roles)
        if (x == r) ++c;
    return c;
}

} // namespace

TEST_CASE("recognize the eight-tetrahedron inflation") {
    auto tri = load("table2.txt");
    auto s = recognize_inflation(tri);
    CHECK(count(s.roles, Role::Core) == 2);
    CHECK(count(s.roles, Role::Band) == 3);
    CHECK(count(s.roles, Role::Crossing) == 1);
    CHECK(count(s.roles, Role::BranchPoint) == 2);
    CHECK(s.roles[0] == Role::Core);
    CHECK(s.roles[1] == Role::Core);
    CHECK(s.roles[5] == Role::Crossing);
    CHECK(s.bands == 3);
    CHECK(s.crossings == 1);
    CHECK(s.length == 5);
    CHECK(s.branches.size() == 3);

    auto b = boundary_linking_surface(s);
    CHECK(is_admissible(b));
    CHECK(standard_matching_system(tri).satisfies(b));
    auto topo = surface_topology(tri, b);
    CHECK(topo.euler_characteristic == 0);
    CHECK(topo.boundary_curve_count == 0);
    CHECK(topo.component_count == 1);
}

TEST_CASE("recognize the eleven-tetrahedron inflation") {
    auto tri = load("table6.txt");
    auto s = recognize_inflation(tri);
    CHECK(count(s.roles, Role::Core) == 3);
    CHECK(count(s.roles, Role::Band) == 5);
    CHECK(count(s.roles, Role::Crossing) == 1);
    CHECK(count(s.roles, Role::BranchPoint) == 2);
    CHECK(s.length == 7);
}

TEST_CASE("recognize the shortened twelve-tetrahedron triangulation") {
    auto tri = load("table3.txt");
    auto s = recognize_inflation(tri);
    CHECK(count(s.roles, Role::Core) == 8);
    CHECK(count(s.roles, Role::Band) == 2);
    CHECK(count(s.roles, Role::Crossing) == 0);
    CHECK(count(s.roles, Role::BranchPoint) == 2);
    CHECK(s.length == 2);
    CHECK(s.branches.size() == 2);
}

TEST_CASE("crushing the eight-tetrahedron inflation recovers the trefoil") {
    auto tri = load("table2.txt");
    auto s = recognize_inflation(tri);
    auto res = crush_along(tri, s.linking);
    CHECK(res.ideal.size() == 2);
    CHECK(is_isomorphic(res.ideal, load("table1.txt")));
    // order preserving: core tets 0,1 map to 0,1
    CHECK(res.core_tets == std::vector<int>{0, 1});
    CHECK(res.tet_map[0] == 0);
    CHECK(res.tet_map[1] == 1);
    for (int t = 2; t < 8; ++t) CHECK(res.tet_map[t] == -1);
}

TEST_CASE("crushing the eleven-tetrahedron inflation recovers its core") {
    auto tri = load("table6.txt");
    auto s = recognize_inflation(tri);
    auto res = crush_along(tri, s.linking);
    CHECK(res.ideal.size() == 3);
    CHECK(is_isomorphic(res.ideal, load("table5.txt")));
    CHECK(res.core_tets == std::vector<int>{0, 1, 2});
}

TEST_CASE("crushing the compatible triangulation leaves ten tetrahedra") {
    auto tri = load("table4.txt");
    auto s = recognize_inflation(tri);
    auto res = crush_along(tri, s.linking);
    CHECK(res.ideal.size() == 10);
    for (int t = 0; t < 14; ++t) {
        bool crushed = (t == 2 || t == 9 || t == 10 || t == 12);
        CHECK((res.tet_map[t] == -1) == crushed);
    }
    Skeleton sk(res.ideal);
    CHECK(sk.kind() == TriKind::Ideal);
    CHECK(sk.n_vertex_classes() == 1);
}

TEST_CASE("cell decomposition of the eight-tetrahedron inflation") {
    auto tri = load("table2.txt");
    auto s = recognize_inflation(tri);
    auto cd = decompose_complement(tri, s.linking);
    CHECK(cd.simple);
    CHECK(cd.trivial_product);
    CHECK(cd.core_tets == std::vector<int>{0, 1});
    for (const auto& c : cd.chains) CHECK(c.prisms.size() <= 3);
    // 8 core faces pair into 4 chains
    CHECK(cd.chains.size() == 4);
}

TEST_CASE("compatibility checks quads only at bands and crossings") {
    auto tri = load("table3.txt");
    auto s = recognize_inflation(tri);
    CHECK(is_compatible(s, s.linking));
    StandardVector bad = s.linking;
    for (int t = 0; t < bad.n_tets(); ++t) {
        if (s.roles[t] != Role::Band) continue;
        int q = (s.quad_types[t] + 1) % 3;
        bad.quad(t, q) += 1;
        break;
    }
    CHECK(!is_compatible(s, bad));
}

TEST_CASE("frames of the trefoil complement link") {
    auto tri = load("table1.txt");
    Skeleton sk(tri);
    auto frames = find_frames(sk, 0);
    CHECK(!frames.empty());
    bool has_theta = false;
    for (const auto& fr : frames) {
        CHECK(fr.edges.size() >= 2);
        int total = 0;
        for (const auto& bp : fr.branch_points) total += bp.index;
        CHECK(total == 2 * static_cast<int>(fr.branch_points.size()) + 2);
        if (fr.edges.size() == 3 && fr.branch_points.size() == 2 &&
            fr.branch_points[0].index == 3 && fr.branch_points[1].index == 3)
            has_theta = true;
    }
    CHECK(has_theta);
}

TEST_CASE("boundary slope of the boundary-linking surface is trivial") {
    // the linking surface is closed, so asking for its slope must fail
    auto tri = load("table4.txt");
    auto s = recognize_inflation(tri);
    CHECK_THROWS(boundary_slope(tri, s.linking));
}
