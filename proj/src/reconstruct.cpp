#include "mtgv/reconstruct.hpp"

#include "mtgv/error.hpp"

#include <stdexcept>

namespace mtgv {

namespace {

void check_targets(const TriMesh& mesh, const FaceField& targets)
{
    if (targets.size() != mesh.face_count() || targets.channels() != 3)
        throw ShapeError("target normals must be a 3-channel field over the faces");
}

}  // namespace

TriMesh update_vertices(const TriMesh& mesh, const FaceField& targets, int iterations)
{
    check_targets(mesh, targets);
    if (iterations < 1) throw std::invalid_argument("update_vertices: iterations must be at least 1");

    std::vector<int> ring_size(mesh.vertices.size(), 0);
    for (const auto& f : mesh.faces)
        for (int v : f) ++ring_size[v];

    TriMesh out = mesh;
    std::vector<Vec3> displacement(mesh.vertices.size());
    for (int it = 0; it < iterations; ++it) {
        std::fill(displacement.begin(), displacement.end(), Vec3::Zero());
        for (int f = 0; f < out.face_count(); ++f) {
            const Vec3 n = targets.row(f).transpose();
            if (face_cross(out, f).dot(n) < 0.0) continue;
            const Vec3 c = face_centroid(out, f);
            for (int v : out.faces[f]) displacement[v] += n * n.dot(c - out.vertices[v]);
        }
        for (std::size_t v = 0; v < out.vertices.size(); ++v)
            if (ring_size[v] > 0) out.vertices[v] += displacement[v] / ring_size[v];
    }
    return out;
}

double normal_projection_residual(const TriMesh& mesh, const FaceField& targets)
{
    check_targets(mesh, targets);
    double total = 0.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Vec3 n = targets.row(f).transpose();
        const Vec3 c = face_centroid(mesh, f);
        for (int v : mesh.faces[f]) {
            const double d = n.dot(c - mesh.vertices[v]);
            total += d * d;
        }
    }
    return total;
}

}  // namespace mtgv
