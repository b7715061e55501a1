#pragma once

#include "mtgv/fields.hpp"
#include "mtgv/topology.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include <iosfwd>
#include <vector>

namespace mtgv {

/// Parameters of the weighted vectorial-TGV normal filter.
///
/// Recommended ranges: alpha1 in [0.5, 3.0], alpha0 in [0.05, 1]; beta = 100
/// for CAD-like meshes and 1000 for organic ones.
struct SolverParams {
    double alpha1 = 1.0;   ///< first-order weight
    double alpha0 = 0.1;   ///< second-order weight
    double beta = 100.0;   ///< fidelity weight
    double r1 = 2.0;       ///< penalty on P = D_M N - v
    double r0 = 2.0;       ///< penalty on the two second-order splittings
    double sigma_e = 0.5;  ///< bandwidth of the edge weights, on |N1 - N2| in [0, 2]
    int max_outer_iters = 100;
    double stop_tol = 1e-10;  ///< on |N^k - N^{k-1}|_U^2
    double cg_rel_tol = 1e-10;
    int cg_max_iters = 2000;
    bool dynamic_weights = true;  ///< false runs with w_e = 1 throughout

    /// Throws std::invalid_argument naming the first offending parameter.
    void validate() const;
};

/// All iterates of the augmented-Lagrangian loop. Every field has 3 channels.
struct SolverState {
    FaceField normals;
    EdgeField v;
    EdgeField p;
    EdgeField lambda_p;
    LineField q1;
    LineField lambda_q1;
    CurveField q2;
    CurveField lambda_q2;
    std::vector<double> weights;  ///< per edge, in (0, 1]
    int iteration = 0;

    /// Zero iterates and multipliers; weights from `normals_in` (or all ones).
    static SolverState initial(const MeshStencils& s, const FaceField& normals_in, const SolverParams& params);
};

struct IterationDiagnostics {
    int iteration = 0;
    double objective = 0.0;
    double residual_p = 0.0;   ///< |P - (D_M N - v)|_V
    double residual_q1 = 0.0;  ///< |Q1 - D1 v|_Wbar
    double residual_q2 = 0.0;  ///< |Q2 - D2 v|_Wtilde
    double normal_change = 0.0;  ///< |N^k - N^{k-1}|_U^2
};

enum class Termination { Converged, IterationLimit };

struct FilterResult {
    FaceField normals;
    std::vector<IterationDiagnostics> history;
    Termination termination = Termination::IterationLimit;
    int iterations = 0;
};

/// w_e = exp(-|N1 - N2|^2 / (2 sigma_e^2)); boundary edges get 1.
std::vector<double> compute_edge_weights(const MeshStencils& s, const FaceField& normals, double sigma_e);

/// Proximal map of (x / y) |.|: max(0, 1 - x / (y |z|)) z, and 0 for z = 0.
template <typename Derived>
typename Derived::PlainObject shrink(double x, double y, const Eigen::MatrixBase<Derived>& z)
{
    const double n = z.norm();
    if (n == 0.0) return Derived::PlainObject::Zero(z.rows(), z.cols());
    const double scale = std::max(0.0, 1.0 - x / (y * n));
    return scale * z;
}

/// Subproblem solvers and the outer loop for one mesh.
///
/// The two linear systems are assembled once in their symmetric positive
/// definite, measure-weighted form and solved channel by channel with
/// Jacobi-preconditioned conjugate gradients.
class TgvNormalFilter {
public:
    using SparseMatrix = Eigen::SparseMatrix<double>;

    TgvNormalFilter(const MeshStencils& stencils, SolverParams params);
    TgvNormalFilter(const TgvNormalFilter&) = delete;
    TgvNormalFilter& operator=(const TgvNormalFilter&) = delete;

    const SolverParams& params() const { return params_; }
    const MeshStencils& stencils() const { return s_; }

    /// beta N - r1 D_M* D_M N = beta N_in - D_M*(lambda_P + r1 (P + v)), then
    /// every row projected to the unit sphere. Rows that solve to (near) zero
    /// keep the current iterate, or N_in on the first iteration.
    FaceField solve_n(const SolverState& state, const FaceField& normals_in) const;
    /// Unprojected minimizer of the N-subproblem.
    FaceField solve_n_linear(const SolverState& state, const FaceField& normals_in) const;
    EdgeField solve_v(const SolverState& state) const;
    EdgeField solve_p(const SolverState& state) const;
    LineField solve_q1(const SolverState& state) const;
    CurveField solve_q2(const SolverState& state) const;
    void update_multipliers(SolverState& state) const;

    /// Left-hand operators of the two Euler-Lagrange systems, in field form.
    FaceField apply_n_operator(const FaceField& n) const;
    EdgeField apply_v_operator(const EdgeField& v) const;
    /// Right-hand sides in field form.
    FaceField n_rhs(const SolverState& state, const FaceField& normals_in) const;
    EdgeField v_rhs(const SolverState& state) const;

    /// Measure-weighted symmetric forms: diag(area) * N-operator and
    /// diag(len(e)) * v-operator.
    const SparseMatrix& n_system() const { return n_system_; }
    const SparseMatrix& v_system() const { return v_system_; }

    /// Filter objective with the state's current weights (diagnostic only).
    double objective(const SolverState& state, const FaceField& normals_in) const;
    IterationDiagnostics diagnose(const SolverState& state, const FaceField& normals_in) const;

    /// Runs the full alternating loop from the zero initialization.
    FilterResult run(const FaceField& normals_in) const;

private:
    Eigen::MatrixXd solve_channels(const Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>& cg,
                                   const Eigen::MatrixXd& rhs, const Eigen::MatrixXd& guess, const char* what) const;

    const MeshStencils& s_;
    SolverParams params_;
    SparseMatrix dm_;
    SparseMatrix d1_;
    SparseMatrix d2_;
    SparseMatrix n_system_;
    SparseMatrix v_system_;
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> n_cg_;
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> v_cg_;
};

FilterResult run_tgv_filter(const MeshStencils& s, const FaceField& normals_in, const SolverParams& params);

/// Writes `k,objective,residual_p,residual_q1,residual_q2,normal_change` rows.
void write_diagnostics_csv(const std::vector<IterationDiagnostics>& history, std::ostream& out);

struct TgvMinimum {
    EdgeField v;
    double energy = 0.0;
    int iterations = 0;
};

/// Approximates min_v tgv_energy(u, v) by running the v / P / Q updates of the
/// filter with u held fixed and unit weights. Returns the lowest-energy field
/// among the iterates and the two bounds v = 0 and v = d_m(u).
TgvMinimum minimize_tgv_energy(const MeshStencils& s, const FaceField& u, double alpha1, double alpha0,
                               const SolverParams& params, int iterations = 300);

}  // namespace mtgv
