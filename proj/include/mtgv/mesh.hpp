#pragma once

#include "mtgv/fields.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <filesystem>
#include <vector>

namespace mtgv {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Triangle mesh with counterclockwise faces.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
};

enum class MeshFormat { Obj, Off };

/// Picks the format from the file extension (case-insensitive `.obj` / `.off`).
MeshFormat format_from_path(const std::filesystem::path& path);

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriMesh load_mesh(const std::filesystem::path& path);

/// Writes with 17 significant digits so positions round-trip exactly.
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format);
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path);

/// Throws ValidationError naming the first offending face or edge: index out of
/// range, repeated vertex, degenerate area, non-manifold or inconsistently
/// oriented edge.
void validate_mesh(const TriMesh& mesh);

/// Area threshold below which a face counts as degenerate:
/// 1e-12 times the squared bounding-box diagonal.
double degenerate_area_threshold(const TriMesh& mesh);

double bounding_box_diagonal(const TriMesh& mesh);
double mean_edge_length(const TriMesh& mesh);

Vec3 face_centroid(const TriMesh& mesh, int f);
double face_area(const TriMesh& mesh, int f);
/// Unnormalized (p1 - p0) x (p2 - p0); its length is twice the face area.
Vec3 face_cross(const TriMesh& mesh, int f);

/// Unit normals from counterclockwise vertex order, one row per face.
FaceField face_normals(const TriMesh& mesh);

}  // namespace mtgv
