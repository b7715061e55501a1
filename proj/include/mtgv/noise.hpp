#pragma once

#include "mtgv/mesh.hpp"

#include <cstdint>
#include <random>

namespace mtgv {

enum class NoiseMode { IidCoordinate, VertexNormal };

struct NoiseSpec {
    double level = 0.0;  ///< standard deviation as a multiple of the mean edge length
    NoiseMode mode = NoiseMode::IidCoordinate;
    std::uint64_t seed = 0;
};

/// Standard normal deviates from std::mt19937_64 through the Box-Muller
/// transform. Both stages are fully specified, so a seed yields the same
/// sequence on every platform (std::normal_distribution does not promise that).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    double uniform_open();  // in (0, 1]

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// sigma = level * mean edge length. IidCoordinate perturbs every coordinate
/// independently; VertexNormal moves each vertex along its area-weighted normal.
/// Throws std::invalid_argument for a negative level.
TriMesh add_gaussian_noise(const TriMesh& mesh, const NoiseSpec& spec);

/// Sample standard deviation of all per-coordinate displacements.
double displacement_stddev(const TriMesh& before, const TriMesh& after);

/// Empirical counterpart of the requested sigma: displacement_stddev for
/// IidCoordinate, root-mean-square displacement length for VertexNormal.
double realized_sigma(const TriMesh& before, const TriMesh& after, NoiseMode mode);

}  // namespace mtgv
