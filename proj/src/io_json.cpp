#include "sdp/io_json.hpp"

#include <cstdio>
#include <sstream>

namespace sdp {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string surface_point_on(const SurfacePoint& p) {
    switch (p.kind) {
        case SurfaceKind::Vertex: return "vertex:" + std::to_string(p.index);
        case SurfaceKind::Edge: return "edge:" + std::to_string(p.index) + "@" + num12(p.t);
        case SurfaceKind::Face: return "face:" + std::to_string(p.index);
    }
    return "?";
}

std::string export_path_json(const Path& path, const PathMeta& meta) {
    std::ostringstream os;
    os << "{\"schema_version\":1"
       << ",\"source\":\"" << meta.source << "\""
       << ",\"target\":\"" << meta.target << "\""
       << ",\"epsilon\":" << num17(meta.epsilon)
       << ",\"scheme\":\"" << meta.scheme << "\""
       << ",\"algo\":\"" << meta.algo << "\""
       << ",\"length\":" << num17(path.length)
       << ",\"nodes\":[";
    for (size_t i = 0; i < path.points.size(); ++i) {
        const SurfacePoint& p = path.points[i];
        if (i) os << ",";
        os << "{\"x\":" << num17(p.coords.x) << ",\"y\":" << num17(p.coords.y)
           << ",\"z\":" << num17(p.coords.z) << ",\"on\":\"" << surface_point_on(p) << "\"}";
    }
    os << "]}";
    return os.str();
}

std::string tree_json(const ShortestPathTree& tree) {
    std::ostringstream os;
    os << "{\"source\":" << tree.source << ",\"nodes\":[";
    bool first = true;
    for (int v = 0; v < static_cast<int>(tree.dist.size()); ++v) {
        if (!tree.reached(v)) continue;
        if (!first) os << ",";
        first = false;
        os << "{\"id\":" << v << ",\"dist\":" << num17(tree.dist[v]);
        if (tree.parent[v] >= 0) os << ",\"parent\":" << tree.parent[v];
        os << "}";
    }
    os << "]}";
    return os.str();
}

std::string steiner_csv(const TerrainMesh& mesh, const Discretization& disc) {
    std::ostringstream os;
    os << "edge_index,t,x,y,z,origin\n";
    for (int e = 0; e < mesh.edge_count(); ++e) {
        for (int k = 0; k < static_cast<int>(disc.per_edge[e].size()); ++k) {
            const SteinerPoint& sp = disc.per_edge[e][k];
            const Point3& c = disc.node_coords[disc.node_of_steiner(e, k)];
            os << e << "," << num12(sp.t) << "," << num17(c.x) << "," << num17(c.y) << ","
               << num17(c.z) << ",";
            for (size_t i = 0; i < sp.origins.size(); ++i) {
                if (i) os << "+";
                os << sp.origins[i].to_string();
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace sdp
