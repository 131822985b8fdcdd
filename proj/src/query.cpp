#include "sdp/query.hpp"

#include <algorithm>

#include "sdp/errors.hpp"

namespace sdp {

Path query_node(const DescentGraph& g, const ShortestPathTree& tree, int v) {
    return extract_path(g, tree, v);
}

namespace {

void add_face_candidates(const DescentGraph& g, int f, std::vector<int>& cand, std::vector<char>& seen) {
    const TerrainMesh& mesh = g.mesh();
    int es[3] = {mesh.face_edges[f][0], mesh.face_edges[f][1], mesh.face_edges[f][2]};
    std::sort(es, es + 3);
    for (int e : es) {
        for (int y : g.edge_chain(e)) {
            if (!seen[y]) {
                seen[y] = 1;
                cand.push_back(y);
            }
        }
    }
}

}  // namespace

Path query_point(const DescentGraph& g, const ShortestPathTree& tree, const SurfacePoint& v) {
    const TerrainMesh& mesh = g.mesh();
    std::vector<int> cand;
    std::vector<char> seen(g.node_count(), 0);
    if (v.kind == SurfaceKind::Face) {
        add_face_candidates(g, v.index, cand, seen);
    } else if (v.kind == SurfaceKind::Edge) {
        // nodes of the <=4 other edges of the incident faces, plus v's own
        // edge: the segment along the edge descends as well
        for (int f : mesh.edges[v.index].faces)
            if (f >= 0) add_face_candidates(g, f, cand, seen);
    } else {
        // vertex targets are nodes; callers should use query_node
        return extract_path(g, tree, g.disc().node_of_vertex(v.index));
    }

    const double hv = v.coords.z;
    int best = -1;
    double best_len = 0.0;
    for (int u : cand) {
        if (g.height(u) < hv) continue;
        if (!tree.reached(u)) continue;
        double len = tree.dist[u] + distance(g.coords(u), v.coords);
        if (best < 0 || len < best_len || (len == best_len && u < best)) {
            best = u;
            best_len = len;
        }
    }
    if (best < 0)
        throw UnreachableTarget("no reachable candidate node at or above the query point");

    Path path = extract_path(g, tree, best);
    path.points.push_back(v);
    path.nodes.push_back(-1);
    path.length = best_len;
    return path;
}

std::string algo_name(Algo a) { return a == Algo::Dijkstra ? "dijkstra" : "bushwhack"; }

std::optional<int> Pipeline::node_at(const SurfacePoint& p) const {
    if (p.kind == SurfaceKind::Vertex) return disc->node_of_vertex(p.index);
    if (p.kind != SurfaceKind::Edge) return std::nullopt;
    const auto& pts = disc->per_edge[p.index];
    double len = mesh->edge_length(p.index);
    // per-edge lists are sorted by t; nearest is enough under kSnapTol
    auto it = std::lower_bound(pts.begin(), pts.end(), p.t,
                               [](const SteinerPoint& sp, double t) { return sp.t < t; });
    for (int k = -1; k <= 0; ++k) {
        auto jt = it + k;
        if (jt < pts.begin() || jt >= pts.end()) continue;
        if (std::abs(jt->t - p.t) * len <= kSnapTol)
            return disc->node_of_steiner(p.index, static_cast<int>(jt - pts.begin()));
    }
    return std::nullopt;
}

Path Pipeline::query(const SurfacePoint& v) const {
    if (auto node = node_at(v)) return query_node(*graph, tree, *node);
    return query_point(*graph, tree, v);
}

Path Pipeline::query_xy(double x, double y) const { return query(locate(*mesh, x, y)); }

Pipeline prepare(const TerrainMesh& base, const SurfacePoint& source, const PipelineConfig& config) {
    Pipeline p;
    SourceInsertion ins = insert_source_ex(base, source);
    p.mesh = std::make_unique<TerrainMesh>(std::move(ins.mesh));
    p.source_vertex = ins.source_vertex;
    p.params = geometry_params(*p.mesh);
    p.scheme = config.scheme ? *config.scheme : hybrid_select(p.params, config.epsilon).scheme;
    p.algo = config.algo;
    p.disc = std::make_unique<Discretization>(discretize(*p.mesh, p.params, config.epsilon, p.scheme));
    p.graph = std::make_unique<DescentGraph>(*p.mesh, *p.disc);
    int s = p.disc->node_of_vertex(p.source_vertex);
    p.tree = config.algo == Algo::Dijkstra ? dijkstra(*p.graph, s) : bushwhack(*p.graph, s);
    return p;
}

}  // namespace sdp
