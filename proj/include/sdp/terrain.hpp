#pragma once

#include <array>
#include <string>
#include <vector>

#include "sdp/errors.hpp"
#include "sdp/geometry.hpp"

namespace sdp {

/// Absolute snap tolerance (model units / barycentric) used when classifying
/// query points as vertex / edge / face hits. Stated once, reused everywhere.
inline constexpr double kSnapTol = 1e-9;

/// An undirected terrain edge. Vertex indices are stored with lo < hi, and
/// positions along the edge are parameterized from the lower-index vertex.
struct Edge {
    int lo = -1;
    int hi = -1;
    std::array<int, 2> faces = {-1, -1};  // 1 or 2 incident faces

    int face_count() const { return faces[1] >= 0 ? 2 : (faces[0] >= 0 ? 1 : 0); }
    bool has_vertex(int v) const { return v == lo || v == hi; }
};

/// Triangulated terrain: an xy-monotone triangle mesh with derived edge and
/// adjacency tables. Immutable after construction; safe to share across
/// concurrent readers.
struct TerrainMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Edge> edges;

    std::vector<std::array<int, 3>> face_edges;   // edge index per face side
    std::vector<std::vector<int>> vertex_edges;   // vertex -> incident edges
    std::vector<std::vector<int>> vertex_faces;   // vertex -> incident faces

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    double height(int v) const { return vertices[v].z; }
    bool edge_is_level(int e) const {
        return vertices[edges[e].lo].z == vertices[edges[e].hi].z;
    }
    double edge_length(int e) const {
        return distance(vertices[edges[e].lo], vertices[edges[e].hi]);
    }
    /// 3D point on edge e at parameter t from the lower-index vertex.
    Point3 edge_point(int e, double t) const {
        return lerp(vertices[edges[e].lo], vertices[edges[e].hi], t);
    }
    /// Index of the edge between vertices a and b, or -1.
    int find_edge(int a, int b) const;
    /// Third vertex of face f, opposite edge e of f.
    int opposite_vertex(int f, int e) const;

    /// Rebuilds edges / face_edges / vertex adjacency from faces.
    void build_adjacency();
};

/// Terrain shape parameters governing the discretization schemes.
struct GeometryParams {
    int n = 0;           // vertex count
    double L = 0.0;      // longest edge length
    double h = 0.0;      // min distance of a face vertex from the opposite edge
    double theta = 0.0;  // max acute angle between a non-level edge and vertical
    double X = 0.0;      // (L/h) * sec(theta)
    double Xprime = 0.0; // L/h
};

enum class SurfaceKind { Vertex, Edge, Face };

/// A location on the terrain surface together with its 3D coordinates.
struct SurfacePoint {
    SurfaceKind kind = SurfaceKind::Vertex;
    int index = -1;                    // vertex / edge / face index
    double t = 0.0;                    // kind == Edge: parameter in (0,1)
    std::array<double, 3> bary{};      // kind == Face: barycentric, all > 0
    Point3 coords;

    static SurfacePoint at_vertex(const TerrainMesh& mesh, int v);
    static SurfacePoint on_edge(const TerrainMesh& mesh, int e, double t);
    static SurfacePoint in_face(const TerrainMesh& mesh, int f, const std::array<double, 3>& bary);

    double height() const { return coords.z; }
};

struct ValidationFinding {
    enum Kind { DegenerateFace, OverlappingFaces, NonManifoldEdge, BadIndex } kind;
    int a = -1;  // face / edge index
    int b = -1;  // second face for overlaps
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool ok() const { return findings.empty(); }
    std::string summary() const;
};

/// Parses the TER text format:
///   # comment
///   v <x> <y> <z>
///   f <i> <j> <k>     (0-based vertex indices; vertices precede faces)
/// Throws ParseError on malformed input and NonTerrainMesh if the parsed
/// mesh fails validate_terrain.
TerrainMesh load_terrain(const std::string& text);

/// Serializes a mesh back to the TER format.
std::string write_terrain(const TerrainMesh& mesh);

/// Checks the terrain invariants: non-degenerate projected faces, pairwise
/// interior-disjoint projections, 1-2 faces per edge. Findings are reported,
/// not thrown.
ValidationReport validate_terrain(const TerrainMesh& mesh);

/// Computes L, h, theta, X, X'. theta = 0 when the terrain has no non-level
/// edge. Throws EmptyMesh when the mesh has no faces.
GeometryParams geometry_params(const TerrainMesh& mesh);

/// Finds the surface point whose xy-projection is (x, y), classifying it as
/// a vertex / edge / face hit with tolerance kSnapTol on barycentric
/// coordinates. Throws PointOffTerrain when outside the projection.
SurfacePoint locate(const TerrainMesh& mesh, double x, double y);

struct SourceInsertion {
    TerrainMesh mesh;
    int source_vertex = -1;
};

/// Adds p as a vertex of the terrain. A vertex hit leaves the mesh
/// unchanged; an edge-interior point splits the 1-2 incident faces; a
/// face-interior point splits its face into 3. The surface is pointwise
/// unchanged.
SourceInsertion insert_source_ex(const TerrainMesh& mesh, const SurfacePoint& p);
TerrainMesh insert_source(const TerrainMesh& mesh, const SurfacePoint& p);

}  // namespace sdp
