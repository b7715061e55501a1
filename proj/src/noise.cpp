#include "mtgv/noise.hpp"

#include "mtgv/error.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mtgv {

double GaussianSource::uniform_open()
{
    // 53 random bits mapped to (0, 1]; avoids log(0) below.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSource::next()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

TriMesh add_gaussian_noise(const TriMesh& mesh, const NoiseSpec& spec)
{
    if (!(spec.level >= 0.0)) throw std::invalid_argument("noise level must be non-negative");
    TriMesh out = mesh;
    if (spec.level == 0.0) return out;

    const double sigma = spec.level * mean_edge_length(mesh);
    GaussianSource gauss(spec.seed);

    if (spec.mode == NoiseMode::IidCoordinate) {
        for (auto& p : out.vertices)
            for (int k = 0; k < 3; ++k) p[k] += sigma * gauss.next();
        return out;
    }

    std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Vec3 c = face_cross(mesh, f);  // length is twice the area
        for (int v : mesh.faces[f]) normals[v] += c;
    }
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
        const double len = normals[v].norm();
        const double offset = sigma * gauss.next();
        if (len > 0.0) out.vertices[v] += offset * normals[v] / len;
    }
    return out;
}

double displacement_stddev(const TriMesh& before, const TriMesh& after)
{
    if (before.vertices.size() != after.vertices.size() || before.vertices.empty())
        throw ShapeError("displacement_stddev: meshes must have the same non-zero vertex count");
    const std::size_t n = before.vertices.size() * 3;
    double mean = 0.0;
    for (std::size_t v = 0; v < before.vertices.size(); ++v) mean += (after.vertices[v] - before.vertices[v]).sum();
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t v = 0; v < before.vertices.size(); ++v) {
        const Vec3 d = after.vertices[v] - before.vertices[v];
        for (int k = 0; k < 3; ++k) ss += (d[k] - mean) * (d[k] - mean);
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double realized_sigma(const TriMesh& before, const TriMesh& after, NoiseMode mode)
{
    if (mode == NoiseMode::IidCoordinate) return displacement_stddev(before, after);
    if (before.vertices.size() != after.vertices.size() || before.vertices.empty())
        throw ShapeError("realized_sigma: meshes must have the same non-zero vertex count");
    double ss = 0.0;
    for (std::size_t v = 0; v < before.vertices.size(); ++v)
        ss += (after.vertices[v] - before.vertices[v]).squaredNorm();
    return std::sqrt(ss / static_cast<double>(before.vertices.size()));
}

}  // namespace mtgv
