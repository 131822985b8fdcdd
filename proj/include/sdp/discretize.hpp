#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdp/terrain.hpp"

namespace sdp {

enum class Scheme { Uniform, Geometric };

std::string scheme_name(Scheme s);

/// Provenance of a Steiner point. Merged points keep every tag.
struct OriginTag {
    enum Kind : uint8_t {
        Plane,         // horizontal plane z = a*delta (a = j)
        VertexPlane,   // horizontal plane through vertex a
        LevelSpacing,  // a-th evenly spaced point on a level edge
        Primary,       // geometric progression, anchor vertex a, exponent b
        Isohypse       // plane through generator a (vertex id, or n + primary seq)
    } kind;
    int a = -1;
    int b = -1;

    std::string to_string() const;
    bool exact_height() const { return kind == Plane || kind == VertexPlane || kind == Isohypse; }
};

/// A discretization point interior to a terrain edge. t is measured from the
/// edge's lower-index vertex. For plane-derived points the height is the
/// defining plane height bit-exactly and t is derived from it.
struct SteinerPoint {
    int edge = -1;
    double t = 0.0;
    double height = 0.0;
    std::vector<OriginTag> origins;
};

/// Primary-point-free zone of radius delta1 around a vertex.
struct VertexVicinity {
    int vertex = -1;
    double radius = 0.0;
};

/// Precomputed constants (and, for the geometric scheme, the global list of
/// isohypse generator heights) for one (scheme, epsilon) choice. Edge point
/// generation is a pure function of the plan, so edges can be produced
/// independently, in any order, or only counted.
struct DiscretizationPlan {
    Scheme scheme = Scheme::Uniform;
    double epsilon = 1.0;
    GeometryParams params;

    // uniform scheme
    double delta = 0.0;
    double sec_theta = 1.0;

    // geometric scheme
    double delta1 = 0.0;
    double delta2 = 0.0;
    std::vector<double> gen_heights;  // sorted generator heights
    std::vector<int> gen_ids;         // parallel ids: vertex v -> v, primary -> n + seq
};

DiscretizationPlan make_plan(const TerrainMesh& mesh, const GeometryParams& params, double epsilon,
                             Scheme scheme);

/// All Steiner points of one edge under the plan, sorted by t, duplicates
/// within 1e-12*L merged (tags unioned, plane-exact heights preferred).
std::vector<SteinerPoint> edge_steiner_points(const TerrainMesh& mesh, const DiscretizationPlan& plan,
                                              int edge);

/// Node identifiers: 0..n-1 are the mesh vertices, then the Steiner points
/// of edge 0, edge 1, ... in t order.
struct NodeRef {
    bool is_vertex = false;
    int vertex = -1;   // valid when is_vertex
    int edge = -1;     // valid when !is_vertex
    int ordinal = -1;  // position within the edge's Steiner list
};

/// Per-edge Steiner lists plus the flat node table for one
/// (scheme, epsilon) choice. Immutable once built.
struct Discretization {
    DiscretizationPlan plan;
    std::vector<std::vector<SteinerPoint>> per_edge;

    std::vector<Point3> node_coords;  // coords.z is the stored height
    std::vector<NodeRef> node_refs;
    std::vector<int> edge_node_base;  // node id of each edge's ordinal 0
    int vertex_count = 0;

    Scheme scheme() const { return plan.scheme; }
    double epsilon() const { return plan.epsilon; }
    int node_count() const { return static_cast<int>(node_coords.size()); }
    int node_of_vertex(int v) const { return v; }
    int node_of_steiner(int e, int ordinal) const { return edge_node_base[e] + ordinal; }
    double node_height(int id) const { return node_coords[id].z; }
    /// Nodes on edge e including the 2 endpoint vertices (the |V ∩ e| of the
    /// per-edge count bounds).
    int nodes_on_edge(int e) const { return static_cast<int>(per_edge[e].size()) + 2; }

    VertexVicinity vicinity(int v) const { return {v, plan.delta1}; }
};

/// Uniform scheme: horizontal planes z = j*delta (j positive integer) and
/// z = h(x) for every vertex x cut each non-level edge; level edges get
/// evenly spaced points at most delta*sec(theta) apart.
Discretization uniform_discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon);

/// Geometric scheme: primary points at distances delta1*(1+delta2)^i from
/// both endpoints of every edge, then an isohypse point on every non-level
/// edge at the height of every primary point and vertex.
Discretization geometric_discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon);

Discretization discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon,
                          Scheme scheme);

/// Worst-case nodes-per-edge bound for the scheme (the quantity
/// hybrid_select compares).
double per_edge_bound(const GeometryParams& params, double epsilon, Scheme scheme);

struct HybridChoice {
    Scheme scheme = Scheme::Uniform;
    double bound_uniform = 0.0;
    double bound_geometric = 0.0;
};

/// Picks the scheme with the smaller predicted per-edge node bound.
HybridChoice hybrid_select(const GeometryParams& params, double epsilon);

/// Per-edge |V ∩ e| (endpoints included) and the node total, computed
/// edge-by-edge without materializing a Discretization.
struct DiscretizationCounts {
    std::vector<long> per_edge;  // includes the 2 endpoint vertices
    long total_nodes = 0;        // vertices + Steiner points
};

DiscretizationCounts count_discretization(const TerrainMesh& mesh, const GeometryParams& params,
                                          double epsilon, Scheme scheme);

}  // namespace sdp
