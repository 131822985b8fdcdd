#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"

using namespace sdp;
using testutil::close_rel;

namespace {

Path path_of_heights(std::initializer_list<double> zs) {
    Path p;
    int i = 0;
    for (double z : zs) {
        SurfacePoint sp;
        sp.kind = SurfaceKind::Face;
        sp.index = 0;
        sp.coords = {static_cast<double>(i++), 0.0, z};
        p.points.push_back(sp);
        p.nodes.push_back(-1);
    }
    return p;
}

}  // namespace

TEST_CASE("check_descending: level-then-down, ascent, single node") {
    CHECK(check_descending(path_of_heights({3.0, 3.0, 1.0})).ok);
    auto bad = check_descending(path_of_heights({1.0, 2.0}));
    CHECK(!bad.ok);
    CHECK(bad.first_violation == 1);
    CHECK(check_descending(path_of_heights({5.0})).ok);
}

TEST_CASE("exact_single_face: T1 cases") {
    auto mesh = testutil::make_t1();
    auto a = SurfacePoint::at_vertex(mesh, 0);
    auto b = SurfacePoint::at_vertex(mesh, 1);
    auto f = locate(mesh, 1.0, 1.0);

    auto ab = exact_single_face(mesh, a, b);
    REQUIRE(ab.has_value());
    CHECK(close_rel(*ab, std::sqrt(13.0), 1e-15));

    auto af = exact_single_face(mesh, a, f);
    REQUIRE(af.has_value());
    CHECK(close_rel(*af, std::sqrt(2.0 + 16.0 / 9.0), 1e-15));

    CHECK(!exact_single_face(mesh, b, a).has_value());  // would ascend
}

TEST_CASE("exact_two_face_unfold: coplanar pair reduces to the straight 3D segment") {
    // both faces on the plane z = 1 - 0.3 x: unfolding is the identity
    TerrainMesh mesh;
    auto zf = [](double x) { return 1.0 - 0.3 * x; };
    mesh.vertices = {{0, 0, zf(0)}, {1, -1, zf(1)}, {1, 1, zf(1)}, {2, 0, zf(2)}};
    mesh.faces = {{0, 1, 2}, {1, 3, 2}};
    mesh.build_adjacency();
    REQUIRE(validate_terrain(mesh).ok());

    auto s = locate(mesh, 0.4, 0.05);
    auto v = locate(mesh, 1.6, -0.05);
    REQUIRE(s.kind == SurfaceKind::Face);
    REQUIRE(v.kind == SurfaceKind::Face);
    REQUIRE(s.index != v.index);
    auto len = exact_two_face_unfold(mesh, s, v);
    REQUIRE(len.has_value());
    CHECK(close_rel(*len, distance(s.coords, v.coords), 1e-12));
}

TEST_CASE("exact_two_face_unfold: infeasible when the crossing would ascend") {
    // ridge above both endpoints: the straight unfolded segment climbs mid-way
    auto mesh = testutil::make_tent(1.0, 0.0, 0.0);
    auto s = locate(mesh, 1.0, -0.6);  // z = 0.4 on the front wing
    auto v = locate(mesh, 1.0, 0.6);
    REQUIRE(s.kind == SurfaceKind::Face);
    REQUIRE(v.kind == SurfaceKind::Face);
    CHECK(s.coords.z < 1.0);
    CHECK(!exact_two_face_unfold(mesh, s, v).has_value());
}

TEST_CASE("exact_two_face_unfold: descending bent-slope case agrees with the fine pipeline") {
    // shared edge from z=0.8 down to z=0.4; s high on the x<1 face, v low on
    // the x>1 face: the straight unfolded crossing descends
    auto mesh = testutil::make_bent_slope(1.0, 0.8, 0.4, 0.1);
    auto s = locate(mesh, 0.55, 0.8);
    auto v = locate(mesh, 1.6, 1.15);
    REQUIRE(s.kind == SurfaceKind::Face);
    REQUIRE(v.kind == SurfaceKind::Face);
    REQUIRE(s.coords.z > v.coords.z);
    auto exact = exact_two_face_unfold(mesh, s, v);
    REQUIRE(exact.has_value());
    CHECK(*exact >= distance(s.coords, v.coords) * (1.0 - 1e-12));

    double ref = reference_solution(mesh, s, v, 0.01);
    CHECK(ref >= *exact * (1.0 - 1e-9));
    CHECK(ref <= *exact * 1.01 * (1.0 + 1e-9));
}

TEST_CASE("naive_sssp: level triangle keeps direct weights; guard on big graphs") {
    auto mesh = testutil::make_level_equilateral();
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);
    auto dist = naive_sssp(g, d.node_of_vertex(0));
    CHECK(dist[d.node_of_vertex(0)] == 0.0);
    CHECK(dist[d.node_of_vertex(1)] == g.weight(d.node_of_vertex(0), d.node_of_vertex(1)));
    CHECK(dist[d.node_of_vertex(2)] == g.weight(d.node_of_vertex(0), d.node_of_vertex(2)));
}

TEST_CASE("reference_solution: single-face case equals exact_single_face") {
    auto mesh = testutil::make_t1();
    auto s = SurfacePoint::at_vertex(mesh, 0);
    auto v = locate(mesh, 1.0, 1.0);
    auto exact = exact_single_face(mesh, s, v);
    REQUIRE(exact.has_value());
    CHECK(reference_solution(mesh, s, v, 0.5) == *exact);
    CHECK(reference_solution(mesh, s, v, 0.01) == *exact);
}

TEST_CASE("gen_star_pyramid: structure and level-path query") {
    auto star3 = gen_star_pyramid(3, 2.0, 1.0, 1.0);
    CHECK(star3.mesh.vertex_count() == 7);
    CHECK(star3.mesh.face_count() == 6);
    CHECK(validate_terrain(star3.mesh).ok());
    CHECK(star3.s.coords.z == 0.5);
    CHECK(star3.t.coords.z == 0.5);

    for (int k : {5, 8}) {
        auto star = gen_star_pyramid(k, 2.0, 1.0, 1.0);
        CHECK(star.mesh.vertex_count() == 1 + 2 * k);
        CHECK(star.mesh.face_count() == 2 * k);
        CHECK(validate_terrain(star.mesh).ok());
    }

    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(star3.mesh, star3.s, config);
    // re-bind t's face on the prepared mesh (indices shifted by the source
    // split); same vertex triple, same barycentrics, bit-identical coords
    int t_face = locate(*p.mesh, star3.t.coords.x, star3.t.coords.y).index;
    REQUIRE(p.mesh->faces[t_face] == star3.mesh.faces[3]);
    auto target = SurfacePoint::in_face(*p.mesh, t_face, star3.t.bary);
    CHECK(target.coords.z == 0.5);
    auto path = p.query(target);
    CHECK(path.points.size() >= 4);  // at least k segments
    for (const auto& pt : path.points) CHECK(pt.coords.z == 0.5);  // level, exactly
}

TEST_CASE("gen_random_terrain: determinism, n=3, corpus guards") {
    auto a = gen_random_terrain(20, 9);
    auto b = gen_random_terrain(20, 9);
    REQUIRE(a.vertex_count() == b.vertex_count());
    for (int v = 0; v < a.vertex_count(); ++v) {
        CHECK(a.vertices[v].x == b.vertices[v].x);
        CHECK(a.vertices[v].y == b.vertices[v].y);
        CHECK(a.vertices[v].z == b.vertices[v].z);
    }
    CHECK(a.faces == b.faces);

    auto tri = gen_random_terrain(3, 1);
    CHECK(tri.vertex_count() == 3);
    CHECK(tri.face_count() == 1);

    auto big = gen_random_terrain(50, 7);
    CHECK(big.vertex_count() == 50);
    CHECK(validate_terrain(big).ok());
    auto gp = geometry_params(big);
    CHECK(gp.h > 0.0);
    CHECK(gp.Xprime <= 50.0);
}

TEST_CASE("delaunay: empty interior circumcircles on a generated set") {
    auto mesh = gen_random_terrain(15, 6);
    // Delaunay property: no vertex strictly inside any triangle's circumcircle
    for (const auto& tri : mesh.faces) {
        const Point3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]], &c = mesh.vertices[tri[2]];
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
            const Point3& p = mesh.vertices[v];
            double ax = a.x - p.x, ay = a.y - p.y;
            double bx = b.x - p.x, by = b.y - p.y;
            double cx = c.x - p.x, cy = c.y - p.y;
            double det = (ax * ax + ay * ay) * (bx * cy - by * cx) -
                         (bx * bx + by * by) * (ax * cy - ay * cx) +
                         (cx * cx + cy * cy) * (ax * by - ay * bx);
            double orient = cross2(a.x, a.y, b.x, b.y, c.x, c.y);
            CHECK(det * (orient > 0 ? 1.0 : -1.0) <= 1e-9);
        }
    }
}
