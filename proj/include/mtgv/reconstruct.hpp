#pragma once

#include "mtgv/fields.hpp"
#include "mtgv/mesh.hpp"

namespace mtgv {

/// Moves vertices so face normals approach `targets`.
///
/// Each sweep applies x_i += 1/|F(i)| * sum_{f in F(i)} n_f (n_f . (c_f - x_i))
/// with centroids c_f from the previous sweep (Jacobi). A face whose current
/// normal points against its target is skipped for that sweep. Connectivity is
/// unchanged.
TriMesh update_vertices(const TriMesh& mesh, const FaceField& targets, int iterations = 30);

/// sum_f sum_{x in f} (n_f . (c_f - x))^2 for the given mesh and targets.
double normal_projection_residual(const TriMesh& mesh, const FaceField& targets);

}  // namespace mtgv
