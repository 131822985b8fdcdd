#pragma once

#include <memory>
#include <optional>

#include "sdp/solve.hpp"

namespace sdp {

/// Tree path to a node target. UnreachableTarget is definitive for node
/// targets: no descending path from s to v exists on the terrain.
Path query_node(const DescentGraph& g, const ShortestPathTree& tree, int v);

/// Approximate SDP to a non-node surface point v: minimizes
/// dist(u) + |uv| over candidate nodes u sharing a face with v and with
/// h(u) >= h(v), then appends the segment uv. Ties pick the smallest
/// NodeId.
Path query_point(const DescentGraph& g, const ShortestPathTree& tree, const SurfacePoint& v);

enum class Algo { Dijkstra, Bushwhack };

std::string algo_name(Algo a);

/// One preprocessed source: the mesh with s inserted as a vertex, its
/// discretization, and the shortest path tree. Queries on it are read-only
/// and may run concurrently. Mesh and discretization live behind stable
/// pointers because the graph refers into them.
struct Pipeline {
    std::unique_ptr<TerrainMesh> mesh;
    int source_vertex = -1;
    GeometryParams params;
    Scheme scheme = Scheme::Uniform;
    Algo algo = Algo::Bushwhack;
    std::unique_ptr<Discretization> disc;
    std::unique_ptr<DescentGraph> graph;
    ShortestPathTree tree;

    int source_node() const { return disc->node_of_vertex(source_vertex); }

    /// Node id of the discretization node coinciding with p (within
    /// kSnapTol), or nullopt.
    std::optional<int> node_at(const SurfacePoint& p) const;

    /// Dispatches to query_node when v coincides with a node, else
    /// query_point. v must be located on this->mesh.
    Path query(const SurfacePoint& v) const;

    /// Locates (x, y) on the prepared mesh and queries it.
    Path query_xy(double x, double y) const;
};

struct PipelineConfig {
    double epsilon = 1.0;
    std::optional<Scheme> scheme;  // nullopt: hybrid_select decides
    Algo algo = Algo::Bushwhack;
};

/// Inserts the source, snapshots geometry parameters, discretizes, and
/// solves single-source shortest paths.
Pipeline prepare(const TerrainMesh& base, const SurfacePoint& source, const PipelineConfig& config);

}  // namespace sdp
