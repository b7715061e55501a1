#pragma once

#include "mtgv/fields.hpp"
#include "mtgv/topology.hpp"

#include <Eigen/SparseCore>

namespace mtgv {

// Measure-weighted inner products. Every field may carry any number of
// channels; the channel sums are folded into the result.

double inner_u(const MeshStencils& s, const FaceField& a, const FaceField& b);
double inner_v(const MeshStencils& s, const EdgeField& a, const EdgeField& b);
double inner_wbar(const MeshStencils& s, const LineField& a, const LineField& b);
double inner_wtilde(const MeshStencils& s, const CurveField& a, const CurveField& b);

double norm_u(const MeshStencils& s, const FaceField& a);
double norm_v(const MeshStencils& s, const EdgeField& a);
double norm_wbar(const MeshStencils& s, const LineField& a);
double norm_wtilde(const MeshStencils& s, const CurveField& a);

// Difference operators and their adjoints, evaluated directly from the
// stencils. The adjoints satisfy <D x, y> = -<x, D* y> in the respective
// weighted inner products.

/// First-order difference across interior edges; zero on the boundary.
EdgeField d_m(const MeshStencils& s, const FaceField& u);
FaceField d_m_adj(const MeshStencils& s, const EdgeField& v);

/// 1-form jump over each line; zero on lines touching the boundary.
LineField d1(const MeshStencils& s, const EdgeField& v);
EdgeField d1_adj(const MeshStencils& s, const LineField& w);

/// 2-form jump over each curve; zero on invalid curves.
CurveField d2(const MeshStencils& s, const EdgeField& v);
EdgeField d2_adj(const MeshStencils& s, const CurveField& w);

/// Unweighted sparse matrices of the same operators (E x T, 3T x E, 3T x E).
/// Multiplying a field's values by these reproduces d_m, d1 and d2.
Eigen::SparseMatrix<double> d_m_matrix(const MeshStencils& s);
Eigen::SparseMatrix<double> d1_matrix(const MeshStencils& s);
Eigen::SparseMatrix<double> d2_matrix(const MeshStencils& s);

}  // namespace mtgv
