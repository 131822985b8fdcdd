#include "sdp/discretize.hpp"

#include <algorithm>
#include <cmath>

namespace sdp {

std::string scheme_name(Scheme s) { return s == Scheme::Uniform ? "uniform" : "geometric"; }

std::string OriginTag::to_string() const {
    switch (kind) {
        case Plane: return "plane:" + std::to_string(a);
        case VertexPlane: return "vplane:" + std::to_string(a);
        case LevelSpacing: return "lvl:" + std::to_string(a);
        case Primary: return "prim:" + std::to_string(a) + ":" + std::to_string(b);
        case Isohypse: return "iso:" + std::to_string(a);
    }
    return "?";
}

namespace {

struct Candidate {
    double t;
    double height;
    OriginTag tag;
};

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) throw InvalidEpsilon(epsilon);
}

// Walks the primary points of one edge: distances delta1*(1+delta2)^i from
// each endpoint while the distance stays below the edge length. The same
// walk produces both the per-edge points and the global generator list, so
// heights agree bit-exactly between the two passes.
template <typename Fn>
void for_each_primary(const TerrainMesh& mesh, double delta1, double delta2, int edge, Fn&& fn) {
    const Edge& ed = mesh.edges[edge];
    const double len = mesh.edge_length(edge);
    const double z_lo = mesh.vertices[ed.lo].z;
    const double z_hi = mesh.vertices[ed.hi].z;
    const double growth = 1.0 + delta2;
    for (int side = 0; side < 2; ++side) {
        const int anchor = side == 0 ? ed.lo : ed.hi;
        double d = delta1;
        for (int i = 0; d < len; ++i, d *= growth) {
            double t = side == 0 ? d / len : 1.0 - d / len;
            double height = z_lo + t * (z_hi - z_lo);
            fn(anchor, i, t, height);
        }
    }
}

void uniform_edge_candidates(const TerrainMesh& mesh, const DiscretizationPlan& plan, int edge,
                             std::vector<Candidate>& out) {
    const Edge& ed = mesh.edges[edge];
    const double z0 = mesh.vertices[ed.lo].z;
    const double z1 = mesh.vertices[ed.hi].z;
    if (z0 == z1) {
        const double len = mesh.edge_length(edge);
        const double spacing = plan.delta * plan.sec_theta;
        long parts = static_cast<long>(std::ceil(len / spacing));
        for (long i = 1; i < parts; ++i) {
            double t = static_cast<double>(i) / static_cast<double>(parts);
            out.push_back({t, z0, {OriginTag::LevelSpacing, static_cast<int>(i), -1}});
        }
        return;
    }
    const double zmin = std::min(z0, z1);
    const double zmax = std::max(z0, z1);
    const double dz = z1 - z0;
    // planes z = j*delta, positive integers j, strictly between the endpoints
    long j = std::max<long>(1, static_cast<long>(std::floor(zmin / plan.delta)) + 1);
    for (; ; ++j) {
        double height = static_cast<double>(j) * plan.delta;
        if (height >= zmax) break;
        if (height <= zmin) continue;
        out.push_back({(height - z0) / dz, height, {OriginTag::Plane, static_cast<int>(j), -1}});
    }
    // planes through every terrain vertex
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        double height = mesh.vertices[v].z;
        if (height > zmin && height < zmax)
            out.push_back({(height - z0) / dz, height, {OriginTag::VertexPlane, v, -1}});
    }
}

void geometric_edge_candidates(const TerrainMesh& mesh, const DiscretizationPlan& plan, int edge,
                               std::vector<Candidate>& out) {
    for_each_primary(mesh, plan.delta1, plan.delta2, edge, [&](int anchor, int i, double t, double height) {
        out.push_back({t, height, {OriginTag::Primary, anchor, i}});
    });
    const Edge& ed = mesh.edges[edge];
    const double z0 = mesh.vertices[ed.lo].z;
    const double z1 = mesh.vertices[ed.hi].z;
    if (z0 == z1) return;  // isohypse points go only on non-level edges
    const double zmin = std::min(z0, z1);
    const double zmax = std::max(z0, z1);
    const double dz = z1 - z0;
    auto first = std::upper_bound(plan.gen_heights.begin(), plan.gen_heights.end(), zmin);
    for (auto it = first; it != plan.gen_heights.end() && *it < zmax; ++it) {
        double height = *it;
        size_t idx = static_cast<size_t>(it - plan.gen_heights.begin());
        out.push_back({(height - z0) / dz, height, {OriginTag::Isohypse, plan.gen_ids[idx], -1}});
    }
}

bool tag_less(const OriginTag& a, const OriginTag& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.a != b.a) return a.a < b.a;
    return a.b < b.b;
}

// Visits merged groups of candidates along the edge: candidates closer than
// 1e-12*L collapse into one group whose representative keeps an exact plane
// height when the group has one. Groups at the edge endpoints are dropped
// (endpoints are vertices, never Steiner points).
template <typename Fn>
void for_each_merged_group(std::vector<Candidate>& cands, double edge_len, double L, Fn&& fn) {
    if (cands.empty()) return;
    const double tol_t = (1e-12 * L) / edge_len;

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.tag.exact_height() != b.tag.exact_height()) return a.tag.exact_height();
        return tag_less(a.tag, b.tag);
    });

    size_t i = 0;
    while (i < cands.size()) {
        size_t j = i + 1;
        while (j < cands.size() && cands[j].t - cands[i].t < tol_t) ++j;
        size_t rep = i;
        for (size_t k = i; k < j; ++k) {
            if (cands[k].tag.exact_height()) {
                rep = k;
                break;
            }
        }
        double t = cands[rep].t;
        if (t > tol_t && t < 1.0 - tol_t && t > 0.0 && t < 1.0) fn(rep, i, j);
        i = j;
    }
}

std::vector<SteinerPoint> merge_candidates(std::vector<Candidate>& cands, int edge, double edge_len,
                                           double L) {
    std::vector<SteinerPoint> points;
    for_each_merged_group(cands, edge_len, L, [&](size_t rep, size_t begin, size_t end) {
        SteinerPoint sp;
        sp.edge = edge;
        sp.t = cands[rep].t;
        sp.height = cands[rep].height;
        for (size_t k = begin; k < end; ++k) sp.origins.push_back(cands[k].tag);
        std::sort(sp.origins.begin(), sp.origins.end(), tag_less);
        points.push_back(std::move(sp));
    });
    return points;
}

}  // namespace

DiscretizationPlan make_plan(const TerrainMesh& mesh, const GeometryParams& params, double epsilon,
                             Scheme scheme) {
    check_epsilon(epsilon);
    DiscretizationPlan plan;
    plan.scheme = scheme;
    plan.epsilon = epsilon;
    plan.params = params;
    if (scheme == Scheme::Uniform) {
        plan.delta = epsilon * params.h * std::cos(params.theta) / (4.0 * params.n);
        plan.sec_theta = 1.0 / std::cos(params.theta);
        return plan;
    }
    plan.delta1 = epsilon * params.h / (6.0 * params.n);
    plan.delta2 = epsilon * params.h / (6.0 * params.L);

    const int n = mesh.vertex_count();
    std::vector<std::pair<double, int>> gens;
    for (int v = 0; v < n; ++v) gens.emplace_back(mesh.vertices[v].z, v);
    int seq = 0;
    for (int e = 0; e < mesh.edge_count(); ++e) {
        for_each_primary(mesh, plan.delta1, plan.delta2, e, [&](int, int, double, double height) {
            gens.emplace_back(height, n + seq);
            ++seq;
        });
    }
    std::sort(gens.begin(), gens.end());
    plan.gen_heights.reserve(gens.size());
    plan.gen_ids.reserve(gens.size());
    for (const auto& [height, id] : gens) {
        plan.gen_heights.push_back(height);
        plan.gen_ids.push_back(id);
    }
    return plan;
}

std::vector<SteinerPoint> edge_steiner_points(const TerrainMesh& mesh, const DiscretizationPlan& plan,
                                              int edge) {
    std::vector<Candidate> cands;
    if (plan.scheme == Scheme::Uniform)
        uniform_edge_candidates(mesh, plan, edge, cands);
    else
        geometric_edge_candidates(mesh, plan, edge, cands);
    return merge_candidates(cands, edge, mesh.edge_length(edge), plan.params.L);
}

namespace {

Discretization build_discretization(const TerrainMesh& mesh, DiscretizationPlan plan) {
    Discretization d;
    d.plan = std::move(plan);
    d.vertex_count = mesh.vertex_count();
    d.per_edge.resize(mesh.edge_count());

    d.node_coords.reserve(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        d.node_coords.push_back(mesh.vertices[v]);
        d.node_refs.push_back({true, v, -1, -1});
    }
    d.edge_node_base.resize(mesh.edge_count());
    for (int e = 0; e < mesh.edge_count(); ++e) {
        d.per_edge[e] = edge_steiner_points(mesh, d.plan, e);
        d.edge_node_base[e] = d.node_count();
        const Edge& ed = mesh.edges[e];
        const Point3& a = mesh.vertices[ed.lo];
        const Point3& b = mesh.vertices[ed.hi];
        for (int k = 0; k < static_cast<int>(d.per_edge[e].size()); ++k) {
            const SteinerPoint& sp = d.per_edge[e][k];
            d.node_coords.push_back({a.x + sp.t * (b.x - a.x), a.y + sp.t * (b.y - a.y), sp.height});
            d.node_refs.push_back({false, -1, e, k});
        }
    }
    return d;
}

}  // namespace

Discretization uniform_discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon) {
    return build_discretization(mesh, make_plan(mesh, params, epsilon, Scheme::Uniform));
}

Discretization geometric_discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon) {
    return build_discretization(mesh, make_plan(mesh, params, epsilon, Scheme::Geometric));
}

Discretization discretize(const TerrainMesh& mesh, const GeometryParams& params, double epsilon,
                          Scheme scheme) {
    return build_discretization(mesh, make_plan(mesh, params, epsilon, scheme));
}

double per_edge_bound(const GeometryParams& params, double epsilon, Scheme scheme) {
    if (scheme == Scheme::Uniform) return 5.0 * params.n * params.X / epsilon;
    double r = params.n * params.L / (epsilon * params.h);
    return 51.0 * r * std::log2(6.0 * r);
}

HybridChoice hybrid_select(const GeometryParams& params, double epsilon) {
    HybridChoice c;
    c.bound_uniform = per_edge_bound(params, epsilon, Scheme::Uniform);
    c.bound_geometric = per_edge_bound(params, epsilon, Scheme::Geometric);
    c.scheme = c.bound_uniform <= c.bound_geometric ? Scheme::Uniform : Scheme::Geometric;
    return c;
}

DiscretizationCounts count_discretization(const TerrainMesh& mesh, const GeometryParams& params,
                                          double epsilon, Scheme scheme) {
    DiscretizationPlan plan = make_plan(mesh, params, epsilon, scheme);
    DiscretizationCounts counts;
    counts.per_edge.resize(mesh.edge_count());
    counts.total_nodes = mesh.vertex_count();
    std::vector<Candidate> scratch;
    for (int e = 0; e < mesh.edge_count(); ++e) {
        scratch.clear();
        if (plan.scheme == Scheme::Uniform)
            uniform_edge_candidates(mesh, plan, e, scratch);
        else
            geometric_edge_candidates(mesh, plan, e, scratch);
        long steiner = 0;
        for_each_merged_group(scratch, mesh.edge_length(e), plan.params.L,
                              [&](size_t, size_t, size_t) { ++steiner; });
        counts.per_edge[e] = steiner + 2;
        counts.total_nodes += steiner;
    }
    return counts;
}

}  // namespace sdp
