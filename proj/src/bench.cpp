#include "sdp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sdp/errors.hpp"

namespace sdp {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<std::pair<double, double>> default_query_points(const TerrainMesh& mesh) {
    std::vector<std::pair<double, double>> pts;
    int nf = mesh.face_count();
    for (int i = 0; i < std::min(3, nf); ++i) {
        int f = nf <= 3 ? i : i * (nf - 1) / 2;
        const auto& tri = mesh.faces[f];
        double cx = (mesh.vertices[tri[0]].x + mesh.vertices[tri[1]].x + mesh.vertices[tri[2]].x) / 3.0;
        double cy = (mesh.vertices[tri[0]].y + mesh.vertices[tri[1]].y + mesh.vertices[tri[2]].y) / 3.0;
        pts.emplace_back(cx, cy);
    }
    return pts;
}

std::string run_bench(const std::vector<BenchCase>& corpus, const BenchOptions& options) {
    std::ostringstream os;
    os << "terrain,n,L_over_h,theta_deg,eps,scheme,algo,nodes_total,max_nodes_per_edge,"
          "bound_per_edge,preprocess_ms,query_ms_avg,path_len\n";
    os.precision(12);
    for (const auto& bench : corpus) {
        for (double eps : options.eps_list) {
            for (Scheme scheme : options.schemes) {
                for (Algo algo : options.algos) {
                    auto t0 = std::chrono::steady_clock::now();
                    PipelineConfig config;
                    config.epsilon = eps;
                    config.scheme = scheme;
                    config.algo = algo;
                    Pipeline p = prepare(bench.mesh, bench.source, config);
                    double preprocess_ms = ms_since(t0);

                    long nodes_total = p.disc->node_count();
                    long max_per_edge = 0;
                    for (int e = 0; e < p.mesh->edge_count(); ++e)
                        max_per_edge = std::max<long>(max_per_edge, p.disc->nodes_on_edge(e));

                    int lowest = 0;
                    for (int v = 1; v < p.mesh->vertex_count(); ++v)
                        if (p.mesh->height(v) < p.mesh->height(lowest)) lowest = v;
                    double path_len = -1.0;
                    if (p.tree.reached(p.disc->node_of_vertex(lowest)))
                        path_len = p.tree.dist[p.disc->node_of_vertex(lowest)];

                    auto t1 = std::chrono::steady_clock::now();
                    int done = 0;
                    for (auto [x, y] : bench.query_xy) {
                        try {
                            p.query_xy(x, y);
                            ++done;
                        } catch (const UnreachableTarget&) {
                        }
                    }
                    double query_ms = done ? ms_since(t1) / done : 0.0;

                    os << bench.name << "," << p.params.n << "," << p.params.Xprime << ","
                       << p.params.theta * 180.0 / M_PI << "," << eps << "," << scheme_name(scheme)
                       << "," << algo_name(algo) << "," << nodes_total << "," << max_per_edge << ","
                       << per_edge_bound(p.params, eps, scheme) << "," << preprocess_ms << ","
                       << query_ms << "," << path_len << "\n";
                }
            }
        }
    }
    return os.str();
}

}  // namespace sdp
