#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"

using namespace sdp;
using testutil::close_rel;

TEST_CASE("query_node: source, reachable vertex, unreachable higher vertex") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 0), config);

    auto self = query_node(*p.graph, p.tree, p.source_node());
    CHECK(self.length == 0.0);
    CHECK(self.points.size() == 1);

    auto to_b = query_node(*p.graph, p.tree, p.disc->node_of_vertex(1));
    CHECK(close_rel(to_b.length, std::sqrt(13.0), 1e-12));

    // from B, the strictly higher vertex A is unreachable for good
    auto pb = prepare(mesh, SurfacePoint::at_vertex(mesh, 1), config);
    CHECK_THROWS_AS(query_node(*pb.graph, pb.tree, pb.disc->node_of_vertex(0)), UnreachableTarget);
}

TEST_CASE("query_point: T1 face point is best served by the source itself") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 0), config);

    auto path = p.query_xy(1.0, 1.0);
    CHECK(path.points.size() == 2);
    CHECK(path.nodes.front() == p.source_node());
    double expect = std::sqrt(2.0 + 16.0 / 9.0);  // |s v|, v = (1,1,8/3)
    CHECK(close_rel(path.length, expect, 1e-12));
    CHECK(check_descending(path).ok);
}

TEST_CASE("query_point: brute force over the candidate set definition") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 0), config);
    const DescentGraph& g = *p.graph;

    // v interior to the level edge at the terrain's minimum height, not a node
    int eBC = p.mesh->find_edge(1, 2);
    REQUIRE(eBC >= 0);
    double vt = 0.251234567;
    auto v = SurfacePoint::on_edge(*p.mesh, eBC, vt);
    REQUIRE(!p.node_at(v));

    auto path = p.query(v);
    CHECK(check_descending(path).ok);

    // candidates: every node of the incident faces with h >= h(v)
    double best = std::numeric_limits<double>::infinity();
    for (int f : p.mesh->edges[eBC].faces) {
        if (f < 0) continue;
        for (int e : p.mesh->face_edges[f]) {
            for (int u : g.edge_chain(e)) {
                if (g.height(u) < v.coords.z || !p.tree.reached(u)) continue;
                best = std::min(best, p.tree.dist[u] + distance(g.coords(u), v.coords));
            }
        }
    }
    CHECK(path.length == best);
}

TEST_CASE("query_point: own-edge nodes are admitted as candidates") {
    // tent with the source on the ridge: the best last hop to a ridge-interior
    // target runs along the ridge itself
    auto mesh = testutil::make_tent(1.0, 0.0, 0.25, 2.0, 1.0);
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 0), config);

    int ridge = p.mesh->find_edge(0, 1);
    auto v = SurfacePoint::on_edge(*p.mesh, ridge, 0.3123456);
    REQUIRE(!p.node_at(v));
    auto path = p.query(v);
    CHECK(check_descending(path).ok);
    // straight along the level ridge from the source endpoint
    CHECK(close_rel(path.length, 0.3123456 * 2.0, 1e-9));
}

TEST_CASE("query_point: unreachable when the point sits above every reachable node") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    // source at the low vertex B: nothing above height 2 is reachable
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 1), config);
    // face point at z = 10/3 > 2
    CHECK_THROWS_AS(p.query_xy(0.5, 0.5), UnreachableTarget);
}

TEST_CASE("pipeline: hybrid scheme choice and xy source insertion") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    auto p = prepare(mesh, locate(mesh, 0.5, 0.5), config);
    CHECK(p.scheme == Scheme::Uniform);  // T1's hybrid pick
    CHECK(p.mesh->vertex_count() == 4);
    CHECK(p.source_vertex == 3);
    auto path = p.query_xy(1.2, 1.2);  // z = 2.4, below the source's 10/3
    CHECK(check_descending(path).ok);
}

TEST_CASE("query dispatches node-coincident points to query_node") {
    auto mesh = testutil::make_t1();
    PipelineConfig config;
    config.epsilon = 1.0;
    config.scheme = Scheme::Uniform;
    auto p = prepare(mesh, SurfacePoint::at_vertex(mesh, 0), config);
    int eBC = p.mesh->find_edge(1, 2);
    REQUIRE(!p.disc->per_edge[eBC].empty());
    const auto& sp = p.disc->per_edge[eBC][0];
    auto v = SurfacePoint::on_edge(*p.mesh, eBC, sp.t);
    auto node = p.node_at(v);
    REQUIRE(node.has_value());
    auto path = p.query(v);
    CHECK(path.nodes.back() == *node);  // ends at the node, no appended segment
}
