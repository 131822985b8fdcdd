#pragma once

#include <stdexcept>
#include <string>

namespace sdp {

/// Malformed terrain file (bad directive, bad index, faces before vertices).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The mesh is structurally a triangle soup but violates the terrain
/// property (degenerate or overlapping projected faces, non-manifold edges).
struct NonTerrainMesh : std::runtime_error {
    explicit NonTerrainMesh(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyMesh : std::runtime_error {
    EmptyMesh() : std::runtime_error("mesh has no faces") {}
};

/// Query point lies outside the projected triangulation.
struct PointOffTerrain : std::runtime_error {
    explicit PointOffTerrain(const std::string& msg) : std::runtime_error(msg) {}
};

/// epsilon outside (0, 1].
struct InvalidEpsilon : std::runtime_error {
    explicit InvalidEpsilon(double eps)
        : std::runtime_error("epsilon must be in (0,1], got " + std::to_string(eps)) {}
};

/// No descending path to the requested target exists in the search graph.
struct UnreachableTarget : std::runtime_error {
    explicit UnreachableTarget(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sdp
