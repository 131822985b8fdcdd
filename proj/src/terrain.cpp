#include "sdp/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace sdp {

int TerrainMesh::find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (int e : vertex_edges[a])
        if (edges[e].lo == a && edges[e].hi == b) return e;
    return -1;
}

int TerrainMesh::opposite_vertex(int f, int e) const {
    for (int v : faces[f])
        if (!edges[e].has_vertex(v)) return v;
    return -1;
}

void TerrainMesh::build_adjacency() {
    edges.clear();
    face_edges.assign(faces.size(), {-1, -1, -1});
    vertex_edges.assign(vertices.size(), {});
    vertex_faces.assign(vertices.size(), {});

    std::map<std::pair<int, int>, int> edge_index;
    for (int f = 0; f < face_count(); ++f) {
        const auto& tri = faces[f];
        for (int s = 0; s < 3; ++s) {
            int a = tri[s], b = tri[(s + 1) % 3];
            if (a > b) std::swap(a, b);
            auto key = std::make_pair(a, b);
            auto it = edge_index.find(key);
            int e;
            if (it == edge_index.end()) {
                e = edge_count();
                edge_index.emplace(key, e);
                edges.push_back(Edge{a, b, {f, -1}});
            } else {
                e = it->second;
                if (edges[e].faces[1] < 0)
                    edges[e].faces[1] = f;
                // >2 incident faces is reported by validate_terrain
            }
            face_edges[f][s] = e;
        }
        for (int v : tri) vertex_faces[v].push_back(f);
    }
    for (int e = 0; e < edge_count(); ++e) {
        vertex_edges[edges[e].lo].push_back(e);
        vertex_edges[edges[e].hi].push_back(e);
    }
}

SurfacePoint SurfacePoint::at_vertex(const TerrainMesh& mesh, int v) {
    SurfacePoint p;
    p.kind = SurfaceKind::Vertex;
    p.index = v;
    p.coords = mesh.vertices[v];
    return p;
}

SurfacePoint SurfacePoint::on_edge(const TerrainMesh& mesh, int e, double t) {
    SurfacePoint p;
    p.kind = SurfaceKind::Edge;
    p.index = e;
    p.t = t;
    p.coords = mesh.edge_point(e, t);
    return p;
}

SurfacePoint SurfacePoint::in_face(const TerrainMesh& mesh, int f, const std::array<double, 3>& bary) {
    SurfacePoint p;
    p.kind = SurfaceKind::Face;
    p.index = f;
    p.bary = bary;
    const auto& tri = mesh.faces[f];
    const Point3& a = mesh.vertices[tri[0]];
    const Point3& b = mesh.vertices[tri[1]];
    const Point3& c = mesh.vertices[tri[2]];
    p.coords = a * bary[0] + b * bary[1] + c * bary[2];
    return p;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    if (findings.empty()) {
        os << "ok";
        return os.str();
    }
    for (const auto& f : findings) os << f.message << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// TER parsing

TerrainMesh load_terrain(const std::string& text) {
    TerrainMesh mesh;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool seen_face = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            if (seen_face)
                throw ParseError("line " + std::to_string(lineno) + ": vertex after face");
            double x, y, z;
            if (!(ls >> x >> y >> z))
                throw ParseError("line " + std::to_string(lineno) + ": malformed vertex");
            if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
                throw ParseError("line " + std::to_string(lineno) + ": non-finite coordinate");
            mesh.vertices.push_back({x, y, z});
        } else if (tag == "f") {
            seen_face = true;
            long i, j, k;
            if (!(ls >> i >> j >> k))
                throw ParseError("line " + std::to_string(lineno) + ": malformed face");
            long n = mesh.vertex_count();
            if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
                throw ParseError("line " + std::to_string(lineno) + ": vertex index out of range");
            if (i == j || j == k || i == k)
                throw ParseError("line " + std::to_string(lineno) + ": repeated vertex in face");
            mesh.faces.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    }
    mesh.build_adjacency();
    ValidationReport report = validate_terrain(mesh);
    if (!report.ok())
        throw NonTerrainMesh(report.findings.front().message);
    return mesh;
}

std::string write_terrain(const TerrainMesh& mesh) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& v : mesh.vertices) os << "v " << v.x << " " << v.y << " " << v.z << "\n";
    for (const auto& f : mesh.faces) os << "f " << f[0] << " " << f[1] << " " << f[2] << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Area of the intersection of two convex polygons (Sutherland-Hodgman clip).
// Inputs are CCW-oriented xy triangles.
double clip_area(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip) {
    std::vector<Vec2> poly = subject;
    for (size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
        const Vec2& a = clip[i];
        const Vec2& b = clip[(i + 1) % clip.size()];
        Vec2 dir = b - a;
        std::vector<Vec2> out;
        out.reserve(poly.size() + 3);
        for (size_t j = 0; j < poly.size(); ++j) {
            const Vec2& p = poly[j];
            const Vec2& q = poly[(j + 1) % poly.size()];
            double sp = dir.cross(p - a);
            double sq = dir.cross(q - a);
            if (sp >= 0.0) out.push_back(p);
            if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
                double u = sp / (sp - sq);
                out.push_back(p + (q - p) * u);
            }
        }
        poly.swap(out);
    }
    double twice = 0.0;
    for (size_t j = 0; j < poly.size(); ++j) {
        const Vec2& p = poly[j];
        const Vec2& q = poly[(j + 1) % poly.size()];
        twice += p.cross(q);
    }
    return 0.5 * std::abs(twice);
}

std::vector<Vec2> projected_ccw(const TerrainMesh& mesh, int f) {
    const auto& tri = mesh.faces[f];
    std::vector<Vec2> poly = {{mesh.vertices[tri[0]].x, mesh.vertices[tri[0]].y},
                              {mesh.vertices[tri[1]].x, mesh.vertices[tri[1]].y},
                              {mesh.vertices[tri[2]].x, mesh.vertices[tri[2]].y}};
    double twice = (poly[1] - poly[0]).cross(poly[2] - poly[0]);
    if (twice < 0.0) std::swap(poly[1], poly[2]);
    return poly;
}

}  // namespace

ValidationReport validate_terrain(const TerrainMesh& mesh) {
    ValidationReport report;
    const int nf = mesh.face_count();
    const int nv = mesh.vertex_count();

    for (int f = 0; f < nf; ++f) {
        const auto& tri = mesh.faces[f];
        for (int v : tri) {
            if (v < 0 || v >= nv) {
                report.findings.push_back({ValidationFinding::BadIndex, f, -1,
                                           "face " + std::to_string(f) + " references vertex out of range"});
                return report;  // cannot continue geometrically
            }
        }
    }

    double L = 0.0;
    for (int e = 0; e < mesh.edge_count(); ++e) L = std::max(L, mesh.edge_length(e));
    const double area_tol = 1e-12 * L * L;

    std::vector<bool> degenerate(nf, false);
    for (int f = 0; f < nf; ++f) {
        const auto& tri = mesh.faces[f];
        double area = triangle_area2(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
        if (area < area_tol) {
            degenerate[f] = true;
            report.findings.push_back({ValidationFinding::DegenerateFace, f, -1,
                                       "face " + std::to_string(f) + " has degenerate xy-projection"});
        }
    }

    // A counted pass over face corners catches edges with >2 incident faces
    // that build_adjacency silently capped.
    std::map<std::pair<int, int>, int> edge_use;
    for (int f = 0; f < nf; ++f) {
        const auto& tri = mesh.faces[f];
        for (int s = 0; s < 3; ++s) {
            int a = tri[s], b = tri[(s + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_use[{a, b}]++;
        }
    }
    for (const auto& [key, count] : edge_use) {
        if (count > 2) {
            int e = mesh.find_edge(key.first, key.second);
            report.findings.push_back({ValidationFinding::NonManifoldEdge, e, -1,
                                       "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                           ") has " + std::to_string(count) + " incident faces"});
        }
    }

    // Pairwise projected-interior overlap; shared edges and vertices clip to
    // zero area and pass.
    for (int f = 0; f < nf; ++f) {
        if (degenerate[f]) continue;
        auto pf = projected_ccw(mesh, f);
        double fx0 = std::min({pf[0].x, pf[1].x, pf[2].x}), fx1 = std::max({pf[0].x, pf[1].x, pf[2].x});
        double fy0 = std::min({pf[0].y, pf[1].y, pf[2].y}), fy1 = std::max({pf[0].y, pf[1].y, pf[2].y});
        for (int g = f + 1; g < nf; ++g) {
            if (degenerate[g]) continue;
            auto pg = projected_ccw(mesh, g);
            double gx0 = std::min({pg[0].x, pg[1].x, pg[2].x}), gx1 = std::max({pg[0].x, pg[1].x, pg[2].x});
            double gy0 = std::min({pg[0].y, pg[1].y, pg[2].y}), gy1 = std::max({pg[0].y, pg[1].y, pg[2].y});
            if (gx0 > fx1 || fx0 > gx1 || gy0 > fy1 || fy0 > gy1) continue;
            if (clip_area(pf, pg) > area_tol) {
                report.findings.push_back({ValidationFinding::OverlappingFaces, f, g,
                                           "faces " + std::to_string(f) + " and " + std::to_string(g) +
                                               " overlap in projection"});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Geometry parameters

GeometryParams geometry_params(const TerrainMesh& mesh) {
    if (mesh.face_count() == 0) throw EmptyMesh();
    GeometryParams p;
    p.n = mesh.vertex_count();
    for (int e = 0; e < mesh.edge_count(); ++e) p.L = std::max(p.L, mesh.edge_length(e));

    p.h = std::numeric_limits<double>::infinity();
    for (const auto& tri : mesh.faces) {
        const Point3& a = mesh.vertices[tri[0]];
        const Point3& b = mesh.vertices[tri[1]];
        const Point3& c = mesh.vertices[tri[2]];
        p.h = std::min({p.h, altitude3(a, b, c), altitude3(b, c, a), altitude3(c, a, b)});
    }

    p.theta = 0.0;  // D1: all-level terrain gets theta = 0
    for (int e = 0; e < mesh.edge_count(); ++e) {
        if (mesh.edge_is_level(e)) continue;
        double dz = std::abs(mesh.vertices[mesh.edges[e].hi].z - mesh.vertices[mesh.edges[e].lo].z);
        double len = mesh.edge_length(e);
        p.theta = std::max(p.theta, std::acos(std::min(1.0, dz / len)));
    }
    p.Xprime = p.L / p.h;
    p.X = p.Xprime / std::cos(p.theta);
    return p;
}

// ---------------------------------------------------------------------------
// Point location

SurfacePoint locate(const TerrainMesh& mesh, double x, double y) {
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.faces[f];
        const Point3& a = mesh.vertices[tri[0]];
        const Point3& b = mesh.vertices[tri[1]];
        const Point3& c = mesh.vertices[tri[2]];
        auto l = barycentric2(a, b, c, x, y);
        if (l[0] < -kSnapTol || l[1] < -kSnapTol || l[2] < -kSnapTol) continue;

        // vertex hit: one coordinate ~1
        for (int s = 0; s < 3; ++s)
            if (l[s] >= 1.0 - kSnapTol) return SurfacePoint::at_vertex(mesh, tri[s]);

        // edge hit: one coordinate ~0; the edge opposite that corner
        for (int s = 0; s < 3; ++s) {
            if (std::abs(l[s]) <= kSnapTol) {
                int u = tri[(s + 1) % 3], v = tri[(s + 2) % 3];
                int e = mesh.find_edge(u, v);
                const Edge& ed = mesh.edges[e];
                double tu = (ed.lo == u) ? l[(s + 2) % 3] : l[(s + 1) % 3];
                double t = std::clamp(tu / (l[(s + 1) % 3] + l[(s + 2) % 3]), 0.0, 1.0);
                return SurfacePoint::on_edge(mesh, e, t);
            }
        }
        return SurfacePoint::in_face(mesh, f, l);
    }
    throw PointOffTerrain("(" + std::to_string(x) + "," + std::to_string(y) + ") is outside the terrain");
}

// ---------------------------------------------------------------------------
// Source insertion

SourceInsertion insert_source_ex(const TerrainMesh& mesh, const SurfacePoint& p) {
    SourceInsertion out;
    if (p.kind == SurfaceKind::Vertex) {
        out.mesh = mesh;
        out.source_vertex = p.index;
        return out;
    }

    TerrainMesh next;
    next.vertices = mesh.vertices;
    int nv = next.vertex_count();
    next.vertices.push_back(p.coords);
    out.source_vertex = nv;

    if (p.kind == SurfaceKind::Face) {
        const auto& tri = mesh.faces[p.index];
        for (int f = 0; f < mesh.face_count(); ++f) {
            if (f == p.index) continue;
            next.faces.push_back(mesh.faces[f]);
        }
        next.faces.push_back({tri[0], tri[1], nv});
        next.faces.push_back({tri[1], tri[2], nv});
        next.faces.push_back({tri[2], tri[0], nv});
    } else {
        const Edge& ed = mesh.edges[p.index];
        for (int f = 0; f < mesh.face_count(); ++f) {
            bool incident = (f == ed.faces[0] || f == ed.faces[1]);
            if (!incident) {
                next.faces.push_back(mesh.faces[f]);
                continue;
            }
            const auto& tri = mesh.faces[f];
            // split the side (lo,hi) of this face at the new vertex
            for (int s = 0; s < 3; ++s) {
                int a = tri[s], b = tri[(s + 1) % 3], c = tri[(s + 2) % 3];
                if ((a == ed.lo && b == ed.hi) || (a == ed.hi && b == ed.lo)) {
                    next.faces.push_back({a, nv, c});
                    next.faces.push_back({nv, b, c});
                    break;
                }
            }
        }
    }
    next.build_adjacency();
    out.mesh = std::move(next);
    return out;
}

TerrainMesh insert_source(const TerrainMesh& mesh, const SurfacePoint& p) {
    return insert_source_ex(mesh, p).mesh;
}

}  // namespace sdp
