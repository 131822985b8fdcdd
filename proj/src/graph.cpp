#include "sdp/graph.hpp"

#include <algorithm>

namespace sdp {

DescentGraph::DescentGraph(const TerrainMesh& mesh, const Discretization& disc)
    : mesh_(&mesh), disc_(&disc) {
    chains_.resize(mesh.edge_count());
    for (int e = 0; e < mesh.edge_count(); ++e) {
        auto& chain = chains_[e];
        chain.reserve(disc.per_edge[e].size() + 2);
        chain.push_back(disc.node_of_vertex(mesh.edges[e].lo));
        for (int k = 0; k < static_cast<int>(disc.per_edge[e].size()); ++k)
            chain.push_back(disc.node_of_steiner(e, k));
        chain.push_back(disc.node_of_vertex(mesh.edges[e].hi));
    }
}

bool DescentGraph::nodes_share_edge(int x, int y) const {
    const NodeRef& rx = ref(x);
    const NodeRef& ry = ref(y);
    if (rx.is_vertex && ry.is_vertex) return mesh_->find_edge(rx.vertex, ry.vertex) >= 0;
    if (!rx.is_vertex && !ry.is_vertex) return rx.edge == ry.edge;
    const NodeRef& v = rx.is_vertex ? rx : ry;
    const NodeRef& s = rx.is_vertex ? ry : rx;
    return mesh_->edges[s.edge].has_vertex(v.vertex);
}

bool DescentGraph::nodes_share_face(int x, int y) const {
    const NodeRef& rx = ref(x);
    const NodeRef& ry = ref(y);
    auto vertex_on_edge_face = [&](int v, int e) {
        const Edge& ed = mesh_->edges[e];
        if (ed.has_vertex(v)) return true;
        for (int f : ed.faces)
            if (f >= 0 && mesh_->opposite_vertex(f, e) == v) return true;
        return false;
    };
    if (rx.is_vertex && ry.is_vertex)
        return mesh_->find_edge(rx.vertex, ry.vertex) >= 0;  // any two vertices of a face are adjacent
    if (rx.is_vertex) return vertex_on_edge_face(rx.vertex, ry.edge);
    if (ry.is_vertex) return vertex_on_edge_face(ry.vertex, rx.edge);
    if (rx.edge == ry.edge) return true;
    for (int f : mesh_->edges[rx.edge].faces) {
        if (f < 0) continue;
        for (int g : mesh_->edges[ry.edge].faces)
            if (g == f) return true;
    }
    return false;
}

bool DescentGraph::link_allowed(int x, int y) const {
    if (x == y) return false;
    if (height(x) < height(y)) return false;
    if (!nodes_share_face(x, y)) return false;
    const bool both_vertices = ref(x).is_vertex && ref(y).is_vertex;
    if (!both_vertices && nodes_share_edge(x, y)) return false;
    return true;
}

void DescentGraph::successors_into(int x, std::vector<std::pair<int, double>>& out,
                                   std::vector<int>& stamp, int tick) const {
    const NodeRef& rx = ref(x);
    const double hx = height(x);

    std::vector<int> faces;
    if (rx.is_vertex) {
        faces = mesh_->vertex_faces[rx.vertex];
    } else {
        for (int f : mesh_->edges[rx.edge].faces)
            if (f >= 0) faces.push_back(f);
    }
    std::sort(faces.begin(), faces.end());

    for (int f : faces) {
        int es[3] = {mesh_->face_edges[f][0], mesh_->face_edges[f][1], mesh_->face_edges[f][2]};
        std::sort(es, es + 3);
        for (int e : es) {
            if (!rx.is_vertex && e == rx.edge) continue;  // no links within one edge for Steiner x
            const bool skip_steiner = rx.is_vertex && mesh_->edges[e].has_vertex(rx.vertex);
            for (int y : chains_[e]) {
                if (stamp[y] == tick || y == x) continue;
                const NodeRef& ry = ref(y);
                if (skip_steiner && !ry.is_vertex) continue;
                // a vertex endpoint of Steiner x's own edge shares that edge with x
                if (!rx.is_vertex && ry.is_vertex && mesh_->edges[rx.edge].has_vertex(ry.vertex)) continue;
                if (hx < height(y)) continue;
                stamp[y] = tick;
                out.emplace_back(y, weight(x, y));
            }
        }
    }
}

std::vector<std::pair<int, double>> DescentGraph::successors(int x) const {
    std::vector<std::pair<int, double>> out;
    std::vector<int> stamp(node_count(), 0);
    successors_into(x, out, stamp, 1);
    return out;
}

}  // namespace sdp
