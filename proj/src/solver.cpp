#include "mtgv/solver.hpp"

#include "mtgv/error.hpp"
#include "mtgv/operators.hpp"
#include "mtgv/seminorms.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mtgv {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

Eigen::VectorXd as_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SparseMatrix diagonal(const Eigen::VectorXd& d)
{
    SparseMatrix m(d.size(), d.size());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(d.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(name) + " must be positive and finite (got " + std::to_string(value) + ")");
}

}  // namespace

void SolverParams::validate() const
{
    require_positive(alpha1, "alpha1");
    require_positive(alpha0, "alpha0");
    require_positive(beta, "beta");
    require_positive(r1, "r1");
    require_positive(r0, "r0");
    require_positive(sigma_e, "sigma_e");
    require_positive(stop_tol, "stop_tol");
    require_positive(cg_rel_tol, "cg_rel_tol");
    if (max_outer_iters < 1) throw std::invalid_argument("max_outer_iters must be at least 1");
    if (cg_max_iters < 1) throw std::invalid_argument("cg_max_iters must be at least 1");
}

std::vector<double> compute_edge_weights(const MeshStencils& s, const FaceField& normals, double sigma_e)
{
    if (normals.size() != s.face_count()) throw ShapeError("compute_edge_weights: normal count does not match faces");
    require_positive(sigma_e, "sigma_e");
    const auto& topo = s.topology;
    std::vector<double> w(static_cast<std::size_t>(s.edge_count()), 1.0);
    const double denom = 2.0 * sigma_e * sigma_e;
    for (int e = 0; e < s.edge_count(); ++e) {
        if (topo.is_boundary(e)) continue;
        const auto [f0, f1] = topo.edge_faces[e];
        w[e] = std::exp(-(normals.row(f0) - normals.row(f1)).squaredNorm() / denom);
    }
    return w;
}

SolverState SolverState::initial(const MeshStencils& s, const FaceField& normals_in, const SolverParams& params)
{
    constexpr int kChannels = 3;
    SolverState st;
    st.normals = FaceField(s.face_count(), kChannels);
    st.v = EdgeField(s.edge_count(), kChannels);
    st.p = EdgeField(s.edge_count(), kChannels);
    st.lambda_p = EdgeField(s.edge_count(), kChannels);
    st.q1 = LineField(s.line_count(), kChannels);
    st.lambda_q1 = LineField(s.line_count(), kChannels);
    st.q2 = CurveField(s.curve_count(), kChannels);
    st.lambda_q2 = CurveField(s.curve_count(), kChannels);
    st.weights = params.dynamic_weights ? compute_edge_weights(s, normals_in, params.sigma_e)
                                        : std::vector<double>(static_cast<std::size_t>(s.edge_count()), 1.0);
    st.iteration = 0;
    return st;
}

TgvNormalFilter::TgvNormalFilter(const MeshStencils& stencils, SolverParams params)
    : s_(stencils), params_(params)
{
    params_.validate();
    dm_ = d_m_matrix(s_);
    d1_ = d1_matrix(s_);
    d2_ = d2_matrix(s_);

    const Eigen::VectorXd area = as_vector(s_.topology.face_area);
    const Eigen::VectorXd len_e = as_vector(s_.topology.edge_length);
    const Eigen::VectorXd len_l = as_vector(s_.lines.lengths());
    const Eigen::VectorXd len_c = as_vector(s_.curves.lengths());

    // -diag(area) D_M* = D_M^T diag(len_e), and likewise for the edge operators,
    // so scaling each system by its measure makes it symmetric.
    n_system_ = params_.beta * diagonal(area);
    n_system_ += params_.r1 * SparseMatrix(dm_.transpose() * diagonal(len_e) * dm_);
    v_system_ = params_.r1 * diagonal(len_e);
    v_system_ += params_.r0 * SparseMatrix(d1_.transpose() * diagonal(len_l) * d1_);
    v_system_ += params_.r0 * SparseMatrix(d2_.transpose() * diagonal(len_c) * d2_);
    n_system_.makeCompressed();
    v_system_.makeCompressed();

    for (auto* cg : {&n_cg_, &v_cg_}) {
        cg->setTolerance(params_.cg_rel_tol);
        cg->setMaxIterations(params_.cg_max_iters);
    }
    n_cg_.compute(n_system_);
    v_cg_.compute(v_system_);
}

Eigen::MatrixXd TgvNormalFilter::solve_channels(
    const Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>& cg, const Eigen::MatrixXd& rhs,
    const Eigen::MatrixXd& guess, const char* what) const
{
    Eigen::MatrixXd x(rhs.rows(), rhs.cols());
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
        if (rhs.col(c).squaredNorm() == 0.0) {
            x.col(c).setZero();
            continue;
        }
        x.col(c) = cg.solveWithGuess(rhs.col(c), guess.col(c));
        if (cg.info() != Eigen::Success)
            throw SolverError(std::string(what) + ": conjugate gradient did not converge in " +
                                  std::to_string(cg.iterations()) + " iterations (relative residual " +
                                  std::to_string(cg.error()) + ")",
                              cg.error());
    }
    return x;
}

FaceField TgvNormalFilter::n_rhs(const SolverState& state, const FaceField& normals_in) const
{
    const EdgeField inner = state.lambda_p + params_.r1 * (state.p + state.v);
    return params_.beta * normals_in - d_m_adj(s_, inner);
}

EdgeField TgvNormalFilter::v_rhs(const SolverState& state) const
{
    const double r0 = params_.r0;
    EdgeField rhs = -1.0 * state.lambda_p - params_.r1 * (state.p - d_m(s_, state.normals));
    rhs -= d1_adj(s_, state.lambda_q1 + r0 * state.q1);
    rhs -= d2_adj(s_, state.lambda_q2 + r0 * state.q2);
    return rhs;
}

FaceField TgvNormalFilter::apply_n_operator(const FaceField& n) const
{
    return params_.beta * n - params_.r1 * d_m_adj(s_, d_m(s_, n));
}

EdgeField TgvNormalFilter::apply_v_operator(const EdgeField& v) const
{
    return params_.r1 * v - params_.r0 * d1_adj(s_, d1(s_, v)) - params_.r0 * d2_adj(s_, d2(s_, v));
}

FaceField TgvNormalFilter::solve_n_linear(const SolverState& state, const FaceField& normals_in) const
{
    FaceField rhs = n_rhs(state, normals_in);
    for (int f = 0; f < s_.face_count(); ++f) rhs.row(f) *= s_.topology.face_area[f];
    const Eigen::MatrixXd& guess = state.iteration == 0 ? normals_in.values : state.normals.values;
    return FaceField(solve_channels(n_cg_, rhs.values, guess, "N-subproblem"));
}

FaceField TgvNormalFilter::solve_n(const SolverState& state, const FaceField& normals_in) const
{
    FaceField n = solve_n_linear(state, normals_in);
    const FaceField& fallback = state.iteration == 0 ? normals_in : state.normals;
    for (int f = 0; f < s_.face_count(); ++f) {
        const double len = n.row(f).norm();
        if (len < 1e-12)
            n.row(f) = fallback.row(f);
        else
            n.row(f) /= len;
    }
    return n;
}

EdgeField TgvNormalFilter::solve_v(const SolverState& state) const
{
    EdgeField rhs = v_rhs(state);
    for (int e = 0; e < s_.edge_count(); ++e) rhs.row(e) *= s_.topology.edge_length[e];
    return EdgeField(solve_channels(v_cg_, rhs.values, state.v.values, "v-subproblem"));
}

EdgeField TgvNormalFilter::solve_p(const SolverState& state) const
{
    const EdgeField z = d_m(s_, state.normals) - state.v - (1.0 / params_.r1) * state.lambda_p;
    EdgeField p(z.size(), z.channels());
    for (int e = 0; e < s_.edge_count(); ++e) p.row(e) = shrink(params_.alpha1 * state.weights[e], params_.r1, z.row(e));
    return p;
}

LineField TgvNormalFilter::solve_q1(const SolverState& state) const
{
    const LineField z = d1(s_, state.v) - (1.0 / params_.r0) * state.lambda_q1;
    LineField q(z.size(), z.channels());
    for (int i = 0; i < s_.line_count(); ++i) q.row(i) = shrink(params_.alpha0, params_.r0, z.row(i));
    return q;
}

CurveField TgvNormalFilter::solve_q2(const SolverState& state) const
{
    const CurveField z = d2(s_, state.v) - (1.0 / params_.r0) * state.lambda_q2;
    CurveField q(z.size(), z.channels());
    for (int i = 0; i < s_.curve_count(); ++i) {
        if (!s_.curves.curves[i].valid) continue;
        q.row(i) = shrink(params_.alpha0, params_.r0, z.row(i));
    }
    return q;
}

void TgvNormalFilter::update_multipliers(SolverState& state) const
{
    state.lambda_p += params_.r1 * (state.p - (d_m(s_, state.normals) - state.v));
    state.lambda_q1 += params_.r0 * (state.q1 - d1(s_, state.v));
    state.lambda_q2 += params_.r0 * (state.q2 - d2(s_, state.v));
}

double TgvNormalFilter::objective(const SolverState& state, const FaceField& normals_in) const
{
    const FaceField diff = state.normals - normals_in;
    const double fidelity = 0.5 * params_.beta * inner_u(s_, diff, diff);
    const double first = params_.alpha1 * edge_l1(s_, d_m(s_, state.normals) - state.v, state.weights);
    return fidelity + first + params_.alpha0 * second_order_term(s_, state.v);
}

IterationDiagnostics TgvNormalFilter::diagnose(const SolverState& state, const FaceField& normals_in) const
{
    IterationDiagnostics d;
    d.iteration = state.iteration;
    d.objective = objective(state, normals_in);
    d.residual_p = norm_v(s_, state.p - (d_m(s_, state.normals) - state.v));
    d.residual_q1 = norm_wbar(s_, state.q1 - d1(s_, state.v));
    d.residual_q2 = norm_wtilde(s_, state.q2 - d2(s_, state.v));
    return d;
}

FilterResult TgvNormalFilter::run(const FaceField& normals_in) const
{
    if (normals_in.size() != s_.face_count() || normals_in.channels() != 3)
        throw ShapeError("run: input normals must be a 3-channel field over the faces");

    SolverState state = SolverState::initial(s_, normals_in, params_);
    FilterResult result;
    result.history.reserve(static_cast<std::size_t>(params_.max_outer_iters));

    while (true) {
        FaceField previous = state.normals;
        state.normals = solve_n(state, normals_in);
        state.v = solve_v(state);
        state.p = solve_p(state);
        state.q1 = solve_q1(state);
        state.q2 = solve_q2(state);

        IterationDiagnostics diag = diagnose(state, normals_in);
        const FaceField change = state.normals - previous;
        diag.normal_change = inner_u(s_, change, change);
        result.history.push_back(diag);

        update_multipliers(state);
        if (params_.dynamic_weights) state.weights = compute_edge_weights(s_, state.normals, params_.sigma_e);
        ++state.iteration;

        if (diag.normal_change < params_.stop_tol) {
            result.termination = Termination::Converged;
            break;
        }
        if (state.iteration >= params_.max_outer_iters) {
            result.termination = Termination::IterationLimit;
            break;
        }
    }
    result.iterations = state.iteration;
    result.normals = std::move(state.normals);
    return result;
}

FilterResult run_tgv_filter(const MeshStencils& s, const FaceField& normals_in, const SolverParams& params)
{
    const TgvNormalFilter filter(s, params);
    return filter.run(normals_in);
}

void write_diagnostics_csv(const std::vector<IterationDiagnostics>& history, std::ostream& out)
{
    const auto old_precision = out.precision(17);
    out << "k,objective,residual_p,residual_q1,residual_q2,normal_change\n";
    for (const auto& d : history)
        out << d.iteration << ',' << d.objective << ',' << d.residual_p << ',' << d.residual_q1 << ','
            << d.residual_q2 << ',' << d.normal_change << '\n';
    out.precision(old_precision);
}

TgvMinimum minimize_tgv_energy(const MeshStencils& s, const FaceField& u, double alpha1, double alpha0,
                               const SolverParams& params, int iterations)
{
    SolverParams p = params;
    p.alpha1 = alpha1;
    p.alpha0 = alpha0;
    p.dynamic_weights = false;
    const TgvNormalFilter filter(s, p);

    const auto channels = u.channels();
    SolverState state;
    state.normals = u;
    state.v = EdgeField(s.edge_count(), channels);
    state.p = EdgeField(s.edge_count(), channels);
    state.lambda_p = EdgeField(s.edge_count(), channels);
    state.q1 = LineField(s.line_count(), channels);
    state.lambda_q1 = LineField(s.line_count(), channels);
    state.q2 = CurveField(s.curve_count(), channels);
    state.lambda_q2 = CurveField(s.curve_count(), channels);
    state.weights.assign(static_cast<std::size_t>(s.edge_count()), 1.0);

    TgvMinimum best{state.v, tgv_energy(s, u, state.v, alpha1, alpha0), 0};
    const EdgeField du = d_m(s, u);
    if (const double e = tgv_energy(s, u, du, alpha1, alpha0); e < best.energy) best = {du, e, 0};
    for (int k = 1; k <= iterations; ++k) {
        state.v = filter.solve_v(state);
        state.p = filter.solve_p(state);
        state.q1 = filter.solve_q1(state);
        state.q2 = filter.solve_q2(state);
        filter.update_multipliers(state);
        ++state.iteration;
        const double energy = tgv_energy(s, u, state.v, alpha1, alpha0);
        if (energy < best.energy) best = {state.v, energy, k};
    }
    return best;
}

}  // namespace mtgv
