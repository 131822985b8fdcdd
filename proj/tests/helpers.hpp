#pragma once

#include <string>

#include "sdp/oracle.hpp"
#include "sdp/query.hpp"

namespace testutil {

// Single tilted face: top vertex at (0,0,4), level opposite edge at z=2.
inline sdp::TerrainMesh make_t1() {
    return sdp::load_terrain("v 0 0 4\nv 3 0 2\nv 0 3 2\nf 0 1 2\n");
}

// Two faces over a shared ridge edge from (0,0,zr) to (rlen,0,zr); wing
// vertices at y = -/+ wing, heights za / zb.
inline sdp::TerrainMesh make_tent(double zr, double za, double zb, double rlen = 2.0,
                                  double wing = 1.0) {
    sdp::TerrainMesh mesh;
    mesh.vertices = {{0.0, 0.0, zr}, {rlen, 0.0, zr}, {0.5 * rlen, -wing, za}, {0.5 * rlen, wing, zb}};
    mesh.faces = {{0, 1, 2}, {1, 0, 3}};
    mesh.build_adjacency();
    return mesh;
}

// Two faces over a non-level shared edge, forming a bent slope: the shared
// edge runs from (1,0,ze0) to (1,2,ze1), the side apexes sit at heights za
// (x=0 side) and zb (x=2 side). With za > ze(...) > zb a straight descending
// crossing exists.
inline sdp::TerrainMesh make_bent_slope(double za, double ze0, double ze1, double zb) {
    sdp::TerrainMesh mesh;
    mesh.vertices = {{1.0, 0.0, ze0}, {1.0, 2.0, ze1}, {0.0, 1.0, za}, {2.0, 1.0, zb}};
    mesh.faces = {{0, 1, 2}, {1, 0, 3}};
    mesh.build_adjacency();
    return mesh;
}

// Equilateral level face with side 1.
inline sdp::TerrainMesh make_level_equilateral() {
    sdp::TerrainMesh mesh;
    mesh.vertices = {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {0.5, std::sqrt(3.0) / 2.0, 1.0}};
    mesh.faces = {{0, 1, 2}};
    mesh.build_adjacency();
    return mesh;
}

inline bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
