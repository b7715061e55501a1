#pragma once

#include "mtgv/fields.hpp"
#include "mtgv/topology.hpp"

#include <span>

namespace mtgv {

// Element norms inside these sums couple all channels (Euclidean norm of the
// per-element channel vector) and are weighted by the element measure.

/// sum_e weight_e * |v_e| * len(e); `weights` may be empty for all-ones.
double edge_l1(const MeshStencils& s, const EdgeField& v, std::span<const double> weights = {});
double line_l1(const MeshStencils& s, const LineField& w);
double curve_l1(const MeshStencils& s, const CurveField& w);

/// sum_l |d1 v| len(l) + sum_c |d2 v| len(c).
double second_order_term(const MeshStencils& s, const EdgeField& v);

double tv_seminorm(const MeshStencils& s, const FaceField& u);

/// sum over lines of |2 u_f - u_in - u_out| len(l), skipping lines whose
/// stencil touches the boundary.
double ho_seminorm(const MeshStencils& s, const FaceField& u);

/// alpha1 * sum_e |d_m u - v| len(e) + alpha0 * second_order_term(v).
/// Throws std::invalid_argument unless both weights are positive.
double tgv_energy(const MeshStencils& s, const FaceField& u, const EdgeField& v, double alpha1, double alpha0);

/// Number of edges where |d_m u| exceeds `threshold`.
int tv_support_count(const MeshStencils& s, const FaceField& u, double threshold = 1e-9);

}  // namespace mtgv
