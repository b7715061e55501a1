#include "doctest.h"

#include "cli_runner.hpp"

#include "mtgv/generators.hpp"
#include "mtgv/mesh.hpp"
#include "mtgv/metrics.hpp"

#include <json.hpp>

using json = nlohmann::json;
using cli::quote;
using cli::run;

namespace {

json parse_ok(const cli::Result& r)
{
    INFO("stderr: " << r.err);
    REQUIRE(r.exit_code == 0);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("help and argument errors")
{
    CHECK(run("--help").exit_code == 0);
    const auto help = run("denoise --help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("0.5 to 3.0") != std::string::npos);
    CHECK(help.out.find("0.05 to 1") != std::string::npos);
    CHECK(help.out.find("1000") != std::string::npos);
    CHECK(run("").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("denoise a.obj").exit_code == 1);
    CHECK(run("add-noise a.obj b.obj --mode sideways").exit_code == 1);
}

TEST_CASE("gen and denoise a clean cube")
{
    const auto dir = cli::scratch_dir("mtgv_cli_clean");
    const json g = parse_ok(run("gen cube -n 8 --size 0.05 -o " + quote(dir / "c.obj")));
    CHECK(g["face_count"] == 12 * 64);

    const json d = parse_ok(run("denoise " + quote(dir / "c.obj") + " " + quote(dir / "d.obj") + " --ground-truth " +
                                quote(dir / "c.obj")));
    CHECK(d["theta_after_filtering_degrees"].get<double>() < 0.5);
    const json m = parse_ok(run("metrics " + quote(dir / "d.obj") + " " + quote(dir / "c.obj")));
    CHECK(m["theta_degrees"].get<double>() < 0.5);
    CHECK(m["face_count"] == 768);
}

TEST_CASE("missing input names the path")
{
    const auto r = run("denoise /nonexistent/input_mesh.obj /tmp/out.obj");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("/nonexistent/input_mesh.obj") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("unwritable output is rejected before solving")
{
    const auto dir = cli::scratch_dir("mtgv_cli_unwritable");
    parse_ok(run("gen tetrahedron -o " + quote(dir / "t.obj")));
    const auto r = run("denoise " + quote(dir / "t.obj") + " /nonexistent_dir/out.obj");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("nonexistent_dir") != std::string::npos);
}

TEST_CASE("solver failure exits with 2")
{
    const auto dir = cli::scratch_dir("mtgv_cli_solver");
    parse_ok(run("gen cube -n 6 --size 0.05 -o " + quote(dir / "c.obj")));
    parse_ok(run("add-noise " + quote(dir / "c.obj") + " " + quote(dir / "n.obj") + " --seed 3"));
    const auto r = run("denoise " + quote(dir / "n.obj") + " " + quote(dir / "d.obj") + " --cg-max-iters 1 --cg-tol 1e-14");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("conjugate gradient") != std::string::npos);
    CHECK(run("denoise " + quote(dir / "n.obj") + " " + quote(dir / "d.obj") + " --beta 0").exit_code == 1);
}

TEST_CASE("add-noise")
{
    const auto dir = cli::scratch_dir("mtgv_cli_noise");
    parse_ok(run("gen icosphere -n 6 -o " + quote(dir / "s.obj")));

    const json zero = parse_ok(run("add-noise " + quote(dir / "s.obj") + " " + quote(dir / "z.obj") + " --level 0"));
    CHECK(zero["realized_sigma"].get<double>() == 0.0);
    const auto a = mtgv::load_mesh(dir / "s.obj");
    const auto b = mtgv::load_mesh(dir / "z.obj");
    CHECK(a.faces == b.faces);
    CHECK(a.vertices == b.vertices);

    const json n1 = parse_ok(run("add-noise " + quote(dir / "s.obj") + " " + quote(dir / "n1.obj") + " --level 0.3 --seed 9"));
    parse_ok(run("add-noise " + quote(dir / "s.obj") + " " + quote(dir / "n2.obj") + " --level 0.3 --seed 9"));
    CHECK(cli::read_file(dir / "n1.obj") == cli::read_file(dir / "n2.obj"));
    const double ratio = n1["realized_sigma"].get<double>() / n1["requested_sigma"].get<double>();
    CHECK(std::abs(ratio - 1.0) < 0.05);

    const json nn = parse_ok(run("add-noise " + quote(dir / "s.obj") + " " + quote(dir / "nn.obj") + " --mode normal --seed 9"));
    CHECK(std::abs(nn["realized_sigma"].get<double>() / nn["requested_sigma"].get<double>() - 1.0) < 0.05);
}

TEST_CASE("metrics")
{
    const auto dir = cli::scratch_dir("mtgv_cli_metrics");
    parse_ok(run("gen cube -n 16 --size 0.05 -o " + quote(dir / "c.obj")));
    const json self = parse_ok(run("metrics " + quote(dir / "c.obj") + " " + quote(dir / "c.obj")));
    CHECK(self["theta_degrees"].get<double>() == 0.0);
    CHECK(self["e_v"].get<double>() == 0.0);

    parse_ok(run("gen tetrahedron -o " + quote(dir / "t.obj")));
    CHECK(run("metrics " + quote(dir / "c.obj") + " " + quote(dir / "t.obj")).exit_code == 1);

    parse_ok(run("add-noise " + quote(dir / "c.obj") + " " + quote(dir / "n.obj") + " --level 0.3 --seed 42"));
    const json got = parse_ok(run("metrics " + quote(dir / "n.obj") + " " + quote(dir / "c.obj") + " --error-map " +
                                  quote(dir / "e.csv")));
    const json golden = json::parse(cli::read_file(std::string(MTGV_TEST_DATA) + "/metrics_golden.json"));
    CHECK(got["face_count"] == golden["face_count"]);
    CHECK(got["vertex_count"] == golden["vertex_count"]);
    CHECK(got["theta_degrees"].get<double>() == doctest::Approx(golden["theta_degrees"].get<double>()).epsilon(1e-9));
    CHECK(got["e_v"].get<double>() == doctest::Approx(golden["e_v"].get<double>()).epsilon(1e-9));
    CHECK(cli::read_file(dir / "e.csv").rfind("face,degrees\n", 0) == 0);
}

TEST_CASE("seminorms")
{
    const auto dir = cli::scratch_dir("mtgv_cli_seminorms");
    parse_ok(run("gen grid -n 6 -o " + quote(dir / "g.obj")));
    const json plane = parse_ok(run("seminorms " + quote(dir / "g.obj") + " --optimize-v"));
    for (const char* key : {"tv", "ho", "tgv_at_v_zero", "tgv_at_v_du", "tgv_optimized"}) CHECK(plane[key].get<double>() == 0.0);
    CHECK(plane["tv_support_edges"] == 0);

    parse_ok(run("gen cube -n 5 -o " + quote(dir / "c.obj")));
    const json cube = parse_ok(run("seminorms " + quote(dir / "c.obj") + " --optimize-v --optimize-iters 50"));
    CHECK(cube["tv"].get<double>() > 0.0);
    CHECK(cube["tv_support_edges"] == 12 * 5);
    CHECK(cube["tgv_optimized"].get<double>() <=
          std::min(cube["tgv_at_v_zero"].get<double>(), cube["tgv_at_v_du"].get<double>()));
}

TEST_CASE("dynamic weights flag and determinism")
{
    const auto dir = cli::scratch_dir("mtgv_cli_weights");
    parse_ok(run("gen cube -n 8 --size 0.05 -o " + quote(dir / "c.obj")));
    parse_ok(run("add-noise " + quote(dir / "c.obj") + " " + quote(dir / "n.obj") + " --seed 5"));
    const std::string base = "denoise " + quote(dir / "n.obj") + " ";
    parse_ok(run(base + quote(dir / "a.obj") + " --diagnostics " + quote(dir / "a.csv")));
    parse_ok(run(base + quote(dir / "b.obj") + " --diagnostics " + quote(dir / "b.csv")));
    parse_ok(run(base + quote(dir / "u.obj") + " --no-dynamic-weights"));
    CHECK(cli::read_file(dir / "a.obj") == cli::read_file(dir / "b.obj"));
    CHECK(cli::read_file(dir / "a.csv") == cli::read_file(dir / "b.csv"));
    CHECK(cli::read_file(dir / "a.obj") != cli::read_file(dir / "u.obj"));
}
