#pragma once

#include "mtgv/fields.hpp"
#include "mtgv/mesh.hpp"

#include <filesystem>
#include <memory>
#include <vector>

namespace mtgv {

/// Per-face angle in degrees between two unit-normal fields.
std::vector<double> face_angular_errors(const FaceField& a, const FaceField& b);

/// Mean of face_angular_errors (the theta metric), in degrees.
double mean_angular_difference(const FaceField& a, const FaceField& b);

/// CSV rows `face,degrees` with a header line.
void write_face_error_csv(const std::vector<double>& degrees, const std::filesystem::path& path);

/// Closest point on triangle (a, b, c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Bounding-volume hierarchy over a mesh's triangles for closest-point queries.
/// Immutable after construction; queries are safe from several threads.
class TriangleTree {
public:
    explicit TriangleTree(const TriMesh& mesh);
    ~TriangleTree();
    TriangleTree(TriangleTree&&) noexcept;
    TriangleTree& operator=(TriangleTree&&) noexcept;

    /// Distance from p to the nearest point on any triangle.
    double distance(const Vec3& p) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Mean distance from each denoised vertex to the reference surface, divided
/// by the reference bounding-box diagonal. Throws ShapeError on empty meshes.
double vertex_error(const TriMesh& denoised, const TriMesh& reference);

}  // namespace mtgv
