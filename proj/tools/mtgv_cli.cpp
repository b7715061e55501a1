// mtgv: command-line front end for noise injection, TGV normal filtering,
// metrics and seminorm evaluation.
//
// Exit codes: 0 success, 1 bad arguments / parse / validation / I/O errors,
// 2 solver failure. Results go to stdout as JSON; messages go to stderr.

#include "mtgv/error.hpp"
#include "mtgv/generators.hpp"
#include "mtgv/metrics.hpp"
#include "mtgv/mesh.hpp"
#include "mtgv/noise.hpp"
#include "mtgv/operators.hpp"
#include "mtgv/reconstruct.hpp"
#include "mtgv/seminorms.hpp"
#include "mtgv/solver.hpp"
#include "mtgv/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// Output paths are checked up front so a long solve never ends in an
// unwritable destination.
void require_writable_parent(const std::string& path)
{
    if (path.empty()) return;
    const fs::path parent = fs::absolute(fs::path(path)).parent_path();
    if (!fs::is_directory(parent))
        throw mtgv::IoError("output directory '" + parent.string() + "' does not exist");
}

struct GenOptions {
    std::string shape = "cube";
    std::string output;
    int subdivisions = 8;
    double size = 1.0;
};

struct NoiseOptions {
    std::string input, output;
    double level = 0.3;
    std::string mode = "iid";
    std::uint64_t seed = 0;
};

struct DenoiseOptions {
    std::string input, output;
    mtgv::SolverParams params;
    bool no_dynamic_weights = false;
    int vertex_iters = 30;
    std::string diagnostics;
    std::string ground_truth;
    std::string error_map;
    std::string normals_out;
};

struct MetricsOptions {
    std::string mesh, reference, error_map;
};

struct SeminormOptions {
    std::string input;
    double alpha1 = 1.0;
    double alpha0 = 0.1;
    bool optimize_v = false;
    int optimize_iters = 300;
};

int cmd_gen(const GenOptions& o)
{
    require_writable_parent(o.output);
    mtgv::TriMesh m;
    if (o.shape == "cube")
        m = mtgv::make_cube(o.subdivisions, o.size);
    else if (o.shape == "icosphere")
        m = mtgv::make_icosphere(o.subdivisions, o.size);
    else if (o.shape == "tetrahedron")
        m = mtgv::make_tetrahedron();
    else
        m = mtgv::make_grid(o.subdivisions, o.subdivisions, o.size, o.size);
    mtgv::save_mesh(m, o.output);
    print_json({{"shape", o.shape},
                {"vertex_count", m.vertex_count()},
                {"face_count", m.face_count()},
                {"mean_edge_length", mtgv::mean_edge_length(m)}});
    return kExitOk;
}

int cmd_add_noise(const NoiseOptions& o)
{
    require_writable_parent(o.output);
    const mtgv::TriMesh mesh = mtgv::load_mesh(o.input);
    const mtgv::NoiseMode mode = o.mode == "normal" ? mtgv::NoiseMode::VertexNormal : mtgv::NoiseMode::IidCoordinate;
    const mtgv::TriMesh noisy = mtgv::add_gaussian_noise(mesh, {o.level, mode, o.seed});
    mtgv::save_mesh(noisy, o.output);
    const double le = mtgv::mean_edge_length(mesh);
    print_json({{"level", o.level},
                {"mode", o.mode},
                {"seed", o.seed},
                {"mean_edge_length", le},
                {"requested_sigma", o.level * le},
                {"realized_sigma", mtgv::realized_sigma(mesh, noisy, mode)}});
    return kExitOk;
}

int cmd_denoise(DenoiseOptions o)
{
    o.params.dynamic_weights = !o.no_dynamic_weights;
    o.params.validate();
    if (o.vertex_iters < 1) throw std::invalid_argument("--vertex-iters must be at least 1");
    for (const auto* p : {&o.output, &o.diagnostics, &o.error_map, &o.normals_out}) require_writable_parent(*p);
    if (!o.error_map.empty() && o.ground_truth.empty())
        throw std::invalid_argument("--error-map requires --ground-truth");

    const mtgv::TriMesh mesh = mtgv::load_mesh(o.input);
    std::optional<mtgv::TriMesh> truth;
    if (!o.ground_truth.empty()) {
        truth = mtgv::load_mesh(o.ground_truth);
        if (truth->face_count() != mesh.face_count())
            throw mtgv::ShapeError("ground truth has " + std::to_string(truth->face_count()) + " faces, input has " +
                                   std::to_string(mesh.face_count()));
    }

    const auto stencils = mtgv::MeshStencils::build(mesh);
    const mtgv::FaceField n_in = mtgv::face_normals(mesh);
    const mtgv::FilterResult result = mtgv::run_tgv_filter(stencils, n_in, o.params);
    std::cerr << "filter: " << result.iterations << " iterations, "
              << (result.termination == mtgv::Termination::Converged ? "converged" : "iteration limit") << '\n';

    const mtgv::TriMesh out = mtgv::update_vertices(mesh, result.normals, o.vertex_iters);
    mtgv::save_mesh(out, o.output);

    if (!o.diagnostics.empty()) {
        std::ofstream diag(o.diagnostics);
        mtgv::write_diagnostics_csv(result.history, diag);
        if (!diag) throw mtgv::IoError("write to '" + o.diagnostics + "' failed");
    }
    if (!o.normals_out.empty()) mtgv::write_field_csv(result.normals, o.normals_out);

    json report{{"iterations", result.iterations},
                {"termination", result.termination == mtgv::Termination::Converged ? "converged" : "iteration_limit"},
                {"face_count", out.face_count()},
                {"vertex_count", out.vertex_count()}};
    if (truth) {
        const mtgv::FaceField n_truth = mtgv::face_normals(*truth);
        const mtgv::FaceField n_out = mtgv::face_normals(out);
        report["theta_input_degrees"] = mtgv::mean_angular_difference(n_in, n_truth);
        report["theta_after_filtering_degrees"] = mtgv::mean_angular_difference(result.normals, n_truth);
        report["theta_after_vertex_update_degrees"] = mtgv::mean_angular_difference(n_out, n_truth);
        report["e_v"] = mtgv::vertex_error(out, *truth);
        if (!o.error_map.empty())
            mtgv::write_face_error_csv(mtgv::face_angular_errors(result.normals, n_truth), o.error_map);
    }
    print_json(report);
    return kExitOk;
}

int cmd_metrics(const MetricsOptions& o)
{
    require_writable_parent(o.error_map);
    const mtgv::TriMesh mesh = mtgv::load_mesh(o.mesh);
    const mtgv::TriMesh reference = mtgv::load_mesh(o.reference);
    if (mesh.face_count() != reference.face_count())
        throw mtgv::ShapeError("face counts differ: " + std::to_string(mesh.face_count()) + " vs " +
                               std::to_string(reference.face_count()));
    const auto errors = mtgv::face_angular_errors(mtgv::face_normals(mesh), mtgv::face_normals(reference));
    if (!o.error_map.empty()) mtgv::write_face_error_csv(errors, o.error_map);
    print_json({{"theta_degrees", mtgv::mean_angular_difference(mtgv::face_normals(mesh), mtgv::face_normals(reference))},
                {"e_v", mtgv::vertex_error(mesh, reference)},
                {"face_count", mesh.face_count()},
                {"vertex_count", mesh.vertex_count()}});
    return kExitOk;
}

int cmd_seminorms(const SeminormOptions& o)
{
    const mtgv::TriMesh mesh = mtgv::load_mesh(o.input);
    const auto s = mtgv::MeshStencils::build(mesh);
    const mtgv::FaceField u = mtgv::face_normals(mesh);
    const mtgv::EdgeField zero(s.edge_count(), 3);
    json report{{"tv", mtgv::tv_seminorm(s, u)},
                {"ho", mtgv::ho_seminorm(s, u)},
                {"tgv_at_v_zero", mtgv::tgv_energy(s, u, zero, o.alpha1, o.alpha0)},
                {"tgv_at_v_du", mtgv::tgv_energy(s, u, mtgv::d_m(s, u), o.alpha1, o.alpha0)},
                {"tv_support_edges", mtgv::tv_support_count(s, u)},
                {"edge_count", s.edge_count()}};
    if (o.optimize_v) {
        const mtgv::TgvMinimum best = mtgv::minimize_tgv_energy(s, u, o.alpha1, o.alpha0, mtgv::SolverParams{}, o.optimize_iters);
        report["tgv_optimized"] = best.energy;
        report["tgv_optimized_iteration"] = best.iterations;
    }
    print_json(report);
    return kExitOk;
}

void add_solver_options(CLI::App& cmd, mtgv::SolverParams& p)
{
    cmd.add_option("--alpha1", p.alpha1, "first-order weight (recommended 0.5 to 3.0)")->capture_default_str();
    cmd.add_option("--alpha0", p.alpha0, "second-order weight (recommended 0.05 to 1)")->capture_default_str();
    cmd.add_option("--beta", p.beta, "fidelity weight (100 for CAD-like, 1000 for organic meshes)")->capture_default_str();
    cmd.add_option("--r1", p.r1, "penalty on the first-order splitting")->capture_default_str();
    cmd.add_option("--r0", p.r0, "penalty on the second-order splittings")->capture_default_str();
    cmd.add_option("--sigma-e", p.sigma_e, "edge weight bandwidth")->capture_default_str();
    cmd.add_option("--max-iters", p.max_outer_iters, "outer iteration limit")->capture_default_str();
    cmd.add_option("--stop-tol", p.stop_tol, "stop when |N^k - N^{k-1}|_U^2 falls below this")->capture_default_str();
    cmd.add_option("--cg-tol", p.cg_rel_tol, "relative residual tolerance of the linear solves")->capture_default_str();
    cmd.add_option("--cg-max-iters", p.cg_max_iters, "iteration budget of each linear solve")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mesh denoising with weighted vectorial TGV normal filtering.\n"
                 "Exit codes: 0 success, 1 input/argument error, 2 solver failure."};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "write a procedural test mesh");
    gen_cmd->add_option("shape", gen.shape, "cube, icosphere, tetrahedron or grid")
        ->check(CLI::IsMember({"cube", "icosphere", "tetrahedron", "grid"}))
        ->required();
    gen_cmd->add_option("-o,--output", gen.output, "output mesh (.obj or .off)")->required();
    gen_cmd->add_option("-n,--subdivisions", gen.subdivisions, "cube / grid cells per side, icosphere levels")
        ->capture_default_str();
    gen_cmd->add_option("--size", gen.size, "cube side, sphere radius or grid extent")->capture_default_str();

    NoiseOptions noise;
    auto* noise_cmd = app.add_subcommand("add-noise", "add Gaussian vertex noise");
    noise_cmd->add_option("input", noise.input)->required();
    noise_cmd->add_option("output", noise.output)->required();
    noise_cmd->add_option("--level", noise.level, "standard deviation in units of the mean edge length")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    noise_cmd->add_option("--mode", noise.mode, "iid (per coordinate) or normal (along vertex normals)")
        ->check(CLI::IsMember({"iid", "normal"}))
        ->capture_default_str();
    noise_cmd->add_option("--seed", noise.seed, "seed of the mt19937_64 generator")->capture_default_str();

    DenoiseOptions denoise;
    auto* denoise_cmd = app.add_subcommand("denoise", "filter face normals, then update vertices");
    denoise_cmd->add_option("input", denoise.input)->required();
    denoise_cmd->add_option("output", denoise.output)->required();
    add_solver_options(*denoise_cmd, denoise.params);
    denoise_cmd->add_flag("--no-dynamic-weights", denoise.no_dynamic_weights, "keep all edge weights at 1");
    denoise_cmd->add_option("--vertex-iters", denoise.vertex_iters, "vertex update sweeps")->capture_default_str();
    denoise_cmd->add_option("--diagnostics", denoise.diagnostics, "per-iteration CSV log");
    denoise_cmd->add_option("--ground-truth", denoise.ground_truth, "clean mesh; adds metrics to the report");
    denoise_cmd->add_option("--error-map", denoise.error_map, "per-face angle CSV of the filtered normals");
    denoise_cmd->add_option("--normals", denoise.normals_out, "filtered normals as CSV");

    MetricsOptions metrics;
    auto* metrics_cmd = app.add_subcommand("metrics", "compare a mesh against a reference");
    metrics_cmd->add_option("mesh", metrics.mesh)->required();
    metrics_cmd->add_option("reference", metrics.reference)->required();
    metrics_cmd->add_option("--error-map", metrics.error_map, "per-face angle CSV");

    SeminormOptions semi;
    auto* semi_cmd = app.add_subcommand("seminorms", "TV, HO and TGV values of a mesh's normal field");
    semi_cmd->add_option("input", semi.input)->required();
    semi_cmd->add_option("--alpha1", semi.alpha1, "first-order weight")->capture_default_str();
    semi_cmd->add_option("--alpha0", semi.alpha0, "second-order weight")->capture_default_str();
    semi_cmd->add_flag("--optimize-v", semi.optimize_v, "minimize the TGV energy over v");
    semi_cmd->add_option("--optimize-iters", semi.optimize_iters, "iterations of the v minimization")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*noise_cmd) return cmd_add_noise(noise);
        if (*denoise_cmd) return cmd_denoise(denoise);
        if (*metrics_cmd) return cmd_metrics(metrics);
        return cmd_seminorms(semi);
    } catch (const mtgv::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
