#include "sdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace sdp {

DescendReport check_descending(const Path& path) {
    for (size_t i = 1; i < path.points.size(); ++i) {
        if (path.points[i].coords.z > path.points[i - 1].coords.z)
            return {false, static_cast<int>(i)};
    }
    return {true, -1};
}

namespace {

std::vector<int> carrier_faces(const TerrainMesh& mesh, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfaceKind::Vertex: return mesh.vertex_faces[p.index];
        case SurfaceKind::Edge: {
            std::vector<int> faces;
            for (int f : mesh.edges[p.index].faces)
                if (f >= 0) faces.push_back(f);
            return faces;
        }
        case SurfaceKind::Face: return {p.index};
    }
    return {};
}

int common_face(const TerrainMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
    auto fa = carrier_faces(mesh, a);
    auto fb = carrier_faces(mesh, b);
    int best = -1;
    for (int f : fa)
        for (int g : fb)
            if (f == g && (best < 0 || f < best)) best = f;
    return best;
}

}  // namespace

std::optional<double> exact_single_face(const TerrainMesh& mesh, const SurfacePoint& s,
                                        const SurfacePoint& v) {
    if (common_face(mesh, s, v) < 0) return std::nullopt;
    if (s.coords.z < v.coords.z) return std::nullopt;
    return distance(s.coords, v.coords);
}

std::optional<double> exact_two_face_unfold(const TerrainMesh& mesh, const SurfacePoint& s,
                                            const SurfacePoint& v) {
    if (s.kind != SurfaceKind::Face || v.kind != SurfaceKind::Face) return std::nullopt;
    if (s.index == v.index) return std::nullopt;
    int shared = -1;
    for (int e : mesh.face_edges[s.index])
        for (int e2 : mesh.face_edges[v.index])
            if (e == e2) shared = e;
    if (shared < 0) return std::nullopt;

    const Edge& ed = mesh.edges[shared];
    const Point3& p0 = mesh.vertices[ed.lo];
    const Point3& p1 = mesh.vertices[ed.hi];
    const double elen = distance(p0, p1);

    // 2D frame: p0 at the origin, the shared edge along +x, face of s on the
    // +y side. Each face maps isometrically: its apex (the vertex off the
    // shared edge) is placed by its two distances to the edge endpoints.
    auto apex_2d = [&](int face, double y_sign) {
        int w = mesh.opposite_vertex(face, shared);
        const Point3& q = mesh.vertices[w];
        double d0 = distance(p0, q);
        double d1 = distance(p1, q);
        double x = (d0 * d0 + elen * elen - d1 * d1) / (2.0 * elen);
        double y2 = d0 * d0 - x * x;
        double y = std::sqrt(std::max(0.0, y2));
        return std::pair<int, Vec2>{w, Vec2{x, y_sign * y}};
    };
    auto [ws, apex_s] = apex_2d(s.index, +1.0);
    auto [wv, apex_v] = apex_2d(v.index, -1.0);

    auto point_2d = [&](const SurfacePoint& p, int apex_vertex, const Vec2& apex) {
        const auto& tri = mesh.faces[p.index];
        Vec2 acc{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            Vec2 corner;
            if (tri[i] == ed.lo) corner = {0.0, 0.0};
            else if (tri[i] == ed.hi) corner = {elen, 0.0};
            else corner = apex;
            (void)apex_vertex;
            acc = acc + corner * p.bary[i];
        }
        return acc;
    };
    Vec2 s2 = point_2d(s, ws, apex_s);
    Vec2 v2 = point_2d(v, wv, apex_v);
    if (!(s2.y > 0.0) || !(v2.y < 0.0)) return std::nullopt;  // degenerate flattening

    // crossing of the straight unfolded segment with the shared edge (y=0)
    double tau = s2.y / (s2.y - v2.y);
    double xc = s2.x + tau * (v2.x - s2.x);
    if (!(xc > 0.0) || !(xc < elen)) return std::nullopt;  // must cross the interior

    double t = xc / elen;
    Point3 c = lerp(p0, p1, t);
    // feasibility in 3D heights; unfolded heights are meaningless
    if (!(s.coords.z >= c.z && c.z >= v.coords.z)) return std::nullopt;
    return distance(s.coords, c) + distance(c, v.coords);
}

std::vector<double> naive_sssp(const DescentGraph& g, int source) {
    const int n = g.node_count();
    if (n > 1000) throw std::logic_error("naive_sssp is guarded to graphs of <= 1000 nodes");
    std::vector<std::vector<std::pair<int, double>>> links(n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (g.link_allowed(x, y)) links[x].emplace_back(y, g.weight(x, y));
        }
    }
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    dist[source] = 0.0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (dist[x] == std::numeric_limits<double>::infinity()) continue;
            for (auto [y, w] : links[x]) {
                double nd = dist[x] + w;
                if (nd < dist[y]) {
                    dist[y] = nd;
                    changed = true;
                }
            }
        }
    }
    return dist;
}

double reference_solution(const TerrainMesh& mesh, const SurfacePoint& s, const SurfacePoint& v,
                          double eps_ref) {
    PipelineConfig config;
    config.epsilon = eps_ref;
    config.algo = Algo::Bushwhack;
    Pipeline p = prepare(mesh, s, config);
    // a vertex source leaves the mesh unchanged, so v stays valid as-is;
    // otherwise face indices shifted and v is re-located by its projection
    if (s.kind == SurfaceKind::Vertex) return p.query(v).length;
    return p.query_xy(v.coords.x, v.coords.y).length;
}

// ---------------------------------------------------------------------------
// Generators

StarPyramid gen_star_pyramid(int k, double r_out, double r_in, double apex_height) {
    if (k < 3 || !(r_out > r_in) || !(r_in > 0.0) || !(apex_height > 0.0))
        throw std::invalid_argument("gen_star_pyramid: need k >= 3 and r_out > r_in > 0, H > 0");
    StarPyramid star;
    TerrainMesh& mesh = star.mesh;
    mesh.vertices.push_back({0.0, 0.0, apex_height});
    const int m = 2 * k;
    for (int i = 0; i < m; ++i) {
        double angle = 2.0 * M_PI * i / m;
        double r = (i % 2 == 0) ? r_out : r_in;
        mesh.vertices.push_back({r * std::cos(angle), r * std::sin(angle), 0.0});
    }
    for (int i = 0; i < m; ++i) mesh.faces.push_back({0, 1 + i, 1 + (i + 1) % m});
    mesh.build_adjacency();

    // level line of a lateral face at H/2 runs between the midpoints of its
    // two apex edges; s/t sit at its midpoint: bary (1/2, 1/4, 1/4)
    star.s = SurfacePoint::in_face(mesh, 0, {0.5, 0.25, 0.25});
    star.t = SurfacePoint::in_face(mesh, k, {0.5, 0.25, 0.25});
    return star;
}

namespace {

double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    double ax = a.x - p.x, ay = a.y - p.y;
    double bx = b.x - p.x, by = b.y - p.y;
    double cx = c.x - p.x, cy = c.y - p.y;
    double al = ax * ax + ay * ay;
    double bl = bx * bx + by * by;
    double cl = cx * cx + cy * cy;
    return al * (bx * cy - by * cx) - bl * (ax * cy - ay * cx) + cl * (ax * by - ay * bx);
}

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Vec2>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::array<int, 3>> tris;
    if (n < 3) return tris;

    double x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
    for (const auto& p : points) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);

    std::vector<Vec2> pts = points;
    pts.push_back({cx - 64.0 * span, cy - 32.0 * span});
    pts.push_back({cx + 64.0 * span, cy - 32.0 * span});
    pts.push_back({cx, cy + 64.0 * span});

    std::vector<std::array<int, 3>> live;
    live.push_back({n, n + 1, n + 2});

    for (int p = 0; p < n; ++p) {
        std::vector<std::array<int, 3>> keep;
        std::map<std::pair<int, int>, std::pair<int, int>> boundary;  // undirected -> oriented
        for (const auto& t : live) {
            bool bad = incircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]) > 0.0;
            if (!bad) {
                keep.push_back(t);
                continue;
            }
            for (int s = 0; s < 3; ++s) {
                int u = t[s], v = t[(s + 1) % 3];
                auto key = std::minmax(u, v);
                auto it = boundary.find({key.first, key.second});
                if (it == boundary.end()) boundary[{key.first, key.second}] = {u, v};
                else boundary.erase(it);  // interior edge of the cavity
            }
        }
        for (const auto& [key, oriented] : boundary) {
            auto [u, v] = oriented;
            double orient = cross2(pts[u].x, pts[u].y, pts[v].x, pts[v].y, pts[p].x, pts[p].y);
            if (orient == 0.0) continue;  // p collinear with a cavity edge
            if (orient > 0.0) keep.push_back({u, v, p});
            else keep.push_back({v, u, p});
        }
        live.swap(keep);
    }
    for (const auto& t : live) {
        if (t[0] >= n || t[1] >= n || t[2] >= n) continue;
        tris.push_back(t);
    }
    std::sort(tris.begin(), tris.end());
    return tris;
}

TerrainMesh gen_random_terrain(int n, uint64_t seed, double zmax) {
    if (n < 3) throw std::invalid_argument("gen_random_terrain: need n >= 3");
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // rejection loop: resample with shrinking jitter until every projected
    // triangle keeps altitude >= 0.05 * bbox
    std::vector<Vec2> pts;
    std::vector<std::array<int, 3>> tris;
    for (int attempt = 0; attempt < 12; ++attempt) {
        double shrink = 1.0 / (1 + attempt);
        pts.clear();
        if (n == 3) {
            pts = {{0.0, 0.0}, {1.0, 0.0}, {0.4 + 0.2 * uniform(), 1.0}};
        } else {
            int rows = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
            rows = std::min(rows, n / 2);
            int base = n / rows, rem = n % rows;
            for (int r = 0; r < rows; ++r) {
                int m = base + (r < rem ? 1 : 0);
                double y = static_cast<double>(r) / (rows - 1);
                bool boundary_row = (r == 0 || r == rows - 1);
                double ry = boundary_row ? y : y + (uniform() - 0.5) * shrink * 0.3 / (rows - 1);
                for (int j = 0; j < m; ++j) {
                    double x = static_cast<double>(j) / (m - 1);
                    bool boundary_col = (j == 0 || j == m - 1);
                    double px = boundary_col ? x : x + (uniform() - 0.5) * shrink * 0.35 / (m - 1);
                    double py = boundary_col
                                    ? ry
                                    : (boundary_row ? y : ry + (uniform() - 0.5) * shrink * 0.1 / (rows - 1));
                    pts.push_back({px, py});
                }
            }
        }
        tris = delaunay_triangulate(pts);
        double min_alt = std::numeric_limits<double>::infinity();
        for (const auto& t : tris) {
            Point3 a{pts[t[0]].x, pts[t[0]].y, 0.0};
            Point3 b{pts[t[1]].x, pts[t[1]].y, 0.0};
            Point3 c{pts[t[2]].x, pts[t[2]].y, 0.0};
            min_alt = std::min({min_alt, altitude3(a, b, c), altitude3(b, c, a), altitude3(c, a, b)});
        }
        if (!tris.empty() && min_alt >= 0.05) break;
    }

    TerrainMesh mesh;
    const double q = zmax / 4.0;
    for (const auto& p : pts) {
        double z = q * static_cast<double>(rng() % 5);
        mesh.vertices.push_back({p.x, p.y, z});
    }
    mesh.faces = tris;
    mesh.build_adjacency();

    // one Laplacian pass then re-snap to the height lattice: neighbor height
    // differences stay 0 or >= q, which keeps non-level edges steep
    std::vector<double> smoothed(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        double acc = mesh.vertices[v].z;
        int deg = 1;
        for (int e : mesh.vertex_edges[v]) {
            const Edge& ed = mesh.edges[e];
            acc += mesh.vertices[ed.lo == v ? ed.hi : ed.lo].z;
            ++deg;
        }
        smoothed[v] = q * std::round(acc / deg / q);
    }
    for (int v = 0; v < mesh.vertex_count(); ++v) mesh.vertices[v].z = smoothed[v];

    ValidationReport report = validate_terrain(mesh);
    if (!report.ok())
        throw NonTerrainMesh("gen_random_terrain produced an invalid mesh: " +
                             report.findings.front().message);
    GeometryParams params = geometry_params(mesh);
    if (!(params.h > 0.0) || params.Xprime > 50.0)
        throw std::logic_error("gen_random_terrain guard: h > 0 and L/h <= 50 violated");
    return mesh;
}

}  // namespace sdp
