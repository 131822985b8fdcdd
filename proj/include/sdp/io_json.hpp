#pragma once

#include <string>

#include "sdp/solve.hpp"

namespace sdp {

/// Location string: "vertex:i" | "edge:i@t" (t with 12 significant digits) |
/// "face:i".
std::string surface_point_on(const SurfacePoint& p);

struct PathMeta {
    std::string source;
    std::string target;
    double epsilon = 1.0;
    std::string scheme;
    std::string algo;
};

/// Path JSON: {schema_version:1, source, target, epsilon, scheme, algo,
/// length, nodes:[{x,y,z,on}]}. Numbers carry 17 significant digits.
std::string export_path_json(const Path& path, const PathMeta& meta);

/// Tree JSON: {source, nodes:[{id, dist, parent}]} with unreachable nodes
/// absent and the source's parent omitted.
std::string tree_json(const ShortestPathTree& tree);

/// Steiner dump: edge_index,t,x,y,z,origin rows (merged origin tags joined
/// with '+').
std::string steiner_csv(const TerrainMesh& mesh, const Discretization& disc);

}  // namespace sdp
