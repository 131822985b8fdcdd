#pragma once

#include <cstdint>
#include <optional>

#include "sdp/query.hpp"

namespace sdp {

struct DescendReport {
    bool ok = true;
    int first_violation = -1;  // index of the first point higher than its predecessor
};

/// Consecutive point heights must be non-increasing (exact comparison).
/// Segments are straight, so node monotonicity implies pointwise
/// monotonicity.
DescendReport check_descending(const Path& path);

/// Exact SDP length when s and v share a face and h(s) >= h(v): the
/// straight segment (heights vary linearly along it, and no surface path
/// beats the 3D chord). nullopt when not applicable.
std::optional<double> exact_single_face(const TerrainMesh& mesh, const SurfacePoint& s,
                                        const SurfacePoint& v);

/// Exact SDP length for s, v interior to two faces sharing an edge, in the
/// cases where the unfolded straight segment crosses the shared edge's
/// interior and the 3D two-segment path has non-increasing heights at s,
/// the crossing point, and v. nullopt otherwise.
std::optional<double> exact_two_face_unfold(const TerrainMesh& mesh, const SurfacePoint& s,
                                            const SurfacePoint& v);

/// Bellman-Ford over explicitly enumerated links, relaxed to fixpoint.
/// Reference for dijkstra/bushwhack; guarded to graphs of at most 1000
/// nodes. Unreachable nodes keep +inf.
std::vector<double> naive_sssp(const DescentGraph& g, int source);

/// Full pipeline (hybrid scheme, bushwhack) at eps_ref; the result is
/// within (1+eps_ref) of the true SDP length.
double reference_solution(const TerrainMesh& mesh, const SurfacePoint& s, const SurfacePoint& v,
                          double eps_ref);

struct StarPyramid {
    TerrainMesh mesh;
    SurfacePoint s;  // on the face of base corner 0, at height H/2
    SurfacePoint t;  // antipodal face, same height
};

/// Pyramid over a star-shaped base: apex at (0,0,H), 2k base vertices at
/// alternating radii r_out/r_in on z=0, one lateral face per base edge.
/// s and t sit at height H/2 on maximally separated faces, so the SDP
/// between them consists of level segments.
StarPyramid gen_star_pyramid(int k, double r_out, double r_in, double apex_height);

/// Deterministic random terrain: jittered-grid xy points (boundary points
/// pinned to the bounding box), Delaunay triangulation of the projection,
/// lattice-sampled heights smoothed once and re-snapped so that non-level
/// edges stay steep. Guarantees h > 0 and L/h <= 50.
TerrainMesh gen_random_terrain(int n, uint64_t seed, double zmax = 0.5);

/// Delaunay triangulation of a planar point set (Bowyer-Watson); returns
/// CCW triangles as index triples.
std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Vec2>& points);

}  // namespace sdp
