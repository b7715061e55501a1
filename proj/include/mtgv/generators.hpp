#pragma once

#include "mtgv/mesh.hpp"

namespace mtgv {

// Procedural meshes for tests and the `gen` subcommand. All faces are
// counterclockwise seen from outside (or from +z for planar meshes).

/// Regular tetrahedron with unit edge length.
TriMesh make_tetrahedron();

/// Axis-aligned cube of the given side centered at the origin, each face split
/// into an n x n grid of quads and each quad into two triangles
/// (12 n^2 faces, 6 n^2 + 2 vertices).
TriMesh make_cube(int subdivisions, double side = 1.0);

/// Icosahedron subdivided `levels` times and projected to the sphere
/// (20 * 4^levels faces).
TriMesh make_icosphere(int levels, double radius = 1.0);

/// Planar nx x ny grid over [0, width] x [0, height] in z = 0, two triangles
/// per cell. Has a boundary.
TriMesh make_grid(int nx, int ny, double width = 1.0, double height = 1.0);

}  // namespace mtgv
