#pragma once

#include <string>
#include <vector>

#include "sdp/query.hpp"

namespace sdp {

struct BenchCase {
    std::string name;
    TerrainMesh mesh;
    SurfacePoint source;
    std::vector<std::pair<double, double>> query_xy;  // timed query points
};

struct BenchOptions {
    std::vector<double> eps_list;
    std::vector<Scheme> schemes = {Scheme::Uniform, Scheme::Geometric};
    std::vector<Algo> algos = {Algo::Bushwhack};
};

/// One CSV row per (terrain, eps, scheme, algo), in that loop order:
/// terrain,n,L_over_h,theta_deg,eps,scheme,algo,nodes_total,
/// max_nodes_per_edge,bound_per_edge,preprocess_ms,query_ms_avg,path_len.
/// path_len is the path length to the terrain's lowest vertex (-1 when
/// unreachable).
std::string run_bench(const std::vector<BenchCase>& corpus, const BenchOptions& options);

/// Default query points for a mesh: centroids of up to three faces spread
/// over the face list.
std::vector<std::pair<double, double>> default_query_points(const TerrainMesh& mesh);

}  // namespace sdp
