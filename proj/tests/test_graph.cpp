#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace sdp;

namespace {

// brute-force filter over all node pairs
std::vector<int> brute_successors(const DescentGraph& g, int x) {
    std::vector<int> out;
    for (int y = 0; y < g.node_count(); ++y)
        if (g.link_allowed(x, y)) out.push_back(y);
    return out;
}

void check_iterator_matches_brute(const DescentGraph& g) {
    REQUIRE(g.node_count() <= 500);
    for (int x = 0; x < g.node_count(); ++x) {
        auto fast = g.successors(x);
        std::set<int> fast_set;
        for (auto [y, w] : fast) {
            CHECK(w == g.weight(x, y));
            CHECK(fast_set.insert(y).second);  // no duplicates
        }
        auto brute = brute_successors(g, x);
        CHECK(fast_set == std::set<int>(brute.begin(), brute.end()));
    }
}

}  // namespace

TEST_CASE("link_allowed: rule examples on T1") {
    auto mesh = testutil::make_t1();
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);

    int vA = d.node_of_vertex(0);  // (0,0,4)
    int vB = d.node_of_vertex(1);  // (3,0,2)
    int vC = d.node_of_vertex(2);  // (0,3,2)

    // endpoint vertices of a non-level edge, higher to lower: the edge link
    CHECK(g.link_allowed(vA, vB));
    CHECK(!g.link_allowed(vB, vA));  // would ascend
    CHECK(g.link_allowed(vB, vC));   // level vertex pair, equal heights
    CHECK(g.link_allowed(vC, vB));

    int eAB = mesh.find_edge(0, 1);
    int eBC = mesh.find_edge(1, 2);
    REQUIRE(d.per_edge[eAB].size() >= 2);
    REQUIRE(d.per_edge[eBC].size() >= 1);

    // two Steiner points on one edge: never linked
    int s0 = d.node_of_steiner(eAB, 0);
    int s1 = d.node_of_steiner(eAB, 1);
    CHECK(!g.link_allowed(s1, s0));
    CHECK(!g.link_allowed(s0, s1));

    // Steiner point and an endpoint vertex of its own edge: same edge
    CHECK(!g.link_allowed(s0, vB));
    CHECK(!g.link_allowed(vA, s0));

    // cross-edge Steiner pair within the face, descending
    int sBC = d.node_of_steiner(eBC, 0);
    CHECK(g.height(s0) >= g.height(sBC));
    CHECK(g.link_allowed(s0, sBC));
}

TEST_CASE("successors: T1 top vertex reaches the other vertices and the opposite edge") {
    auto mesh = testutil::make_t1();
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);

    int eBC = mesh.find_edge(1, 2);
    auto succ = g.successors(d.node_of_vertex(0));
    auto brute = brute_successors(g, d.node_of_vertex(0));
    CHECK(succ.size() == brute.size());
    // 2 other vertices + the 17 points of the opposite (level) edge; the two
    // adjacent-edge lists are same-edge-excluded
    CHECK(succ.size() == 2 + d.per_edge[eBC].size());
}

TEST_CASE("successors: globally lowest node only reaches equal-height face mates") {
    auto mesh = testutil::make_t1();
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);
    int vB = d.node_of_vertex(1);  // z = 2, tied with C and the level edge
    for (auto [y, w] : g.successors(vB)) {
        CHECK(g.height(y) == g.height(vB));
        CHECK(w > 0.0);
    }
}

TEST_CASE("successors equal brute force on small corpus graphs") {
    {
        auto mesh = testutil::make_t1();
        auto gp = geometry_params(mesh);
        for (Scheme scheme : {Scheme::Uniform, Scheme::Geometric}) {
            auto d = discretize(mesh, gp, 1.0, scheme);
            DescentGraph g(mesh, d);
            check_iterator_matches_brute(g);
        }
    }
    {
        auto mesh = testutil::make_tent(1.0, 0.0, 0.25);
        auto gp = geometry_params(mesh);
        auto d = uniform_discretize(mesh, gp, 1.0);
        DescentGraph g(mesh, d);
        check_iterator_matches_brute(g);
    }
    {
        auto mesh = gen_random_terrain(8, 2, 0.4);
        auto gp = geometry_params(mesh);
        auto d = uniform_discretize(mesh, gp, 1.0);
        DescentGraph g(mesh, d);
        if (g.node_count() <= 500) check_iterator_matches_brute(g);
    }
}

TEST_CASE("antisymmetry: two-way links only at equal heights") {
    auto mesh = testutil::make_tent(1.0, 0.0, 0.25);
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);
    REQUIRE(g.node_count() <= 200);
    for (int x = 0; x < g.node_count(); ++x)
        for (int y = x + 1; y < g.node_count(); ++y)
            if (g.link_allowed(x, y) && g.link_allowed(y, x)) CHECK(g.height(x) == g.height(y));
}

TEST_CASE("weights: bounded by height drop below and L above") {
    auto mesh = testutil::make_t1();
    auto gp = geometry_params(mesh);
    auto d = uniform_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);
    for (int x = 0; x < g.node_count(); ++x) {
        for (auto [y, w] : g.successors(x)) {
            CHECK(w >= std::abs(g.height(x) - g.height(y)) - 1e-15);
            CHECK(w <= gp.L * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("node count equals vertices plus Steiner points") {
    auto mesh = testutil::make_tent(1.0, 0.0, 0.25);
    auto gp = geometry_params(mesh);
    auto d = geometric_discretize(mesh, gp, 1.0);
    DescentGraph g(mesh, d);
    long steiner = 0;
    for (const auto& pe : d.per_edge) steiner += static_cast<long>(pe.size());
    CHECK(g.node_count() == mesh.vertex_count() + steiner);
}
