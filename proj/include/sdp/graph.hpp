#pragma once

#include <utility>
#include <vector>

#include "sdp/discretize.hpp"
#include "sdp/terrain.hpp"

namespace sdp {

/// Implicit weighted directed graph over the discretization nodes. A link
/// x -> y exists iff x and y lie on the boundary of a common face,
/// h(x) >= h(y) (exact comparison), and x,y do not lie on one common edge
/// with either of them a Steiner point. Links are enumerated on demand;
/// the link set is never materialized.
///
/// Read-only over immutable inputs; enumeration is reentrant.
class DescentGraph {
public:
    DescentGraph(const TerrainMesh& mesh, const Discretization& disc);

    const TerrainMesh& mesh() const { return *mesh_; }
    const Discretization& disc() const { return *disc_; }

    int node_count() const { return disc_->node_count(); }
    double height(int x) const { return disc_->node_height(x); }
    const Point3& coords(int x) const { return disc_->node_coords[x]; }
    const NodeRef& ref(int x) const { return disc_->node_refs[x]; }
    double weight(int x, int y) const { return distance(coords(x), coords(y)); }

    /// Nodes on edge e ordered by t: [lo vertex, steiner..., hi vertex].
    const std::vector<int>& edge_chain(int e) const { return chains_[e]; }

    /// Spec rule, checked pairwise (the brute-force form).
    bool link_allowed(int x, int y) const;

    /// All (y, weight) with link_allowed(x, y), enumerated by carrier face,
    /// then edge, then ordinal, deduplicated.
    std::vector<std::pair<int, double>> successors(int x) const;

    /// Allocation-free variant for solver loops. stamp must be
    /// node_count() entries, initially < tick; visited entries get tick.
    void successors_into(int x, std::vector<std::pair<int, double>>& out, std::vector<int>& stamp,
                         int tick) const;

    bool nodes_share_face(int x, int y) const;
    bool nodes_share_edge(int x, int y) const;

private:
    const TerrainMesh* mesh_;
    const Discretization* disc_;
    std::vector<std::vector<int>> chains_;
};

}  // namespace sdp
