#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "sdp/graph.hpp"

namespace sdp {

/// Distances and parents from one source over the node set. Unreachable
/// nodes keep dist = +inf, parent = -1.
struct ShortestPathTree {
    int source = -1;
    std::vector<double> dist;
    std::vector<int> parent;

    bool reached(int v) const { return dist[v] < std::numeric_limits<double>::infinity(); }
};

/// A polyline on the terrain surface. For tree paths every point is a node;
/// query_point appends one non-node target (node id -1).
struct Path {
    std::vector<SurfacePoint> points;
    std::vector<int> nodes;
    double length = 0.0;
};

/// Textbook Dijkstra over the implicit descent graph (binary heap, lazy
/// deletion). Equal-cost pops break ties by smaller NodeId, making parents
/// deterministic.
ShortestPathTree dijkstra(const DescentGraph& g, int source);

/// Reports each interval insertion the Bushwhack solver performs, for
/// cross-checking claims against brute force.
struct BushwhackInspector {
    /// accessor edge, target edge, new key with its settled cost, the
    /// claimed ordinal ranges [lo,hi) over the target chain, and every
    /// previously inserted (key, key_cost) of that list.
    std::function<void(int e, int eprime, int key, double key_cost,
                       const std::vector<std::pair<int, int>>& claims,
                       const std::vector<std::pair<int, double>>& prior_keys)>
        on_claim;
};

/// Interval-list variant of Dijkstra: per ordered co-face edge pair (e, e')
/// a dynamic list of disjoint intervals over e''s node ordinals records
/// which settled node on e currently claims them; each settled node
/// enqueues only its locally nearest claimed candidate, and popping a
/// candidate enqueues the next one in its interval. Produces the same
/// distances as dijkstra.
ShortestPathTree bushwhack(const DescentGraph& g, int source, const BushwhackInspector* inspect = nullptr);

/// Walks parents from v back to the source. Throws UnreachableTarget when v
/// was never reached.
Path extract_path(const DescentGraph& g, const ShortestPathTree& tree, int v);

/// SurfacePoint for a node id (vertex or Steiner), carrying the node's
/// stored height as its z coordinate.
SurfacePoint node_surface_point(const DescentGraph& g, int node);

}  // namespace sdp
