#include "doctest.h"
#include "oracles.hpp"

#include "mtgv/error.hpp"
#include "mtgv/generators.hpp"
#include "mtgv/metrics.hpp"
#include "mtgv/noise.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

using namespace mtgv;
namespace fs = std::filesystem;

namespace {

TriMesh random_soup(int triangles, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    TriMesh m;
    for (int t = 0; t < triangles; ++t) {
        for (int k = 0; k < 3; ++k) m.vertices.emplace_back(d(rng), d(rng), d(rng));
        m.faces.push_back({3 * t, 3 * t + 1, 3 * t + 2});
    }
    return m;
}

FaceField unit_rows(std::initializer_list<Vec3> rows)
{
    FaceField f(static_cast<Eigen::Index>(rows.size()), 3);
    Eigen::Index i = 0;
    for (const auto& r : rows) f.row(i++) = r.normalized().transpose();
    return f;
}

}  // namespace

TEST_CASE("noise level zero and determinism")
{
    const TriMesh m = make_icosphere(2);
    const TriMesh same = add_gaussian_noise(m, {0.0, NoiseMode::IidCoordinate, 5});
    CHECK(same.faces == m.faces);
    for (int i = 0; i < m.vertex_count(); ++i) CHECK(same.vertices[i] == m.vertices[i]);

    for (NoiseMode mode : {NoiseMode::IidCoordinate, NoiseMode::VertexNormal}) {
        const TriMesh a = add_gaussian_noise(m, {0.3, mode, 99});
        const TriMesh b = add_gaussian_noise(m, {0.3, mode, 99});
        const TriMesh c = add_gaussian_noise(m, {0.3, mode, 100});
        CHECK(a.vertices == b.vertices);
        CHECK(a.vertices != c.vertices);
        CHECK(a.faces == m.faces);
    }
    CHECK_THROWS_AS(add_gaussian_noise(m, {-0.1, NoiseMode::IidCoordinate, 1}), std::invalid_argument);
}

TEST_CASE("gaussian source statistics")
{
    GaussianSource stats(7);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = stats.next();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("realized noise sigma on a large mesh")
{
    const TriMesh m = make_icosphere(6);
    REQUIRE(m.vertex_count() >= 10000);
    const double target = 0.3 * mean_edge_length(m);
    for (NoiseMode mode : {NoiseMode::IidCoordinate, NoiseMode::VertexNormal}) {
        const TriMesh noisy = add_gaussian_noise(m, {0.3, mode, 2024});
        const double realized = realized_sigma(m, noisy, mode);
        CHECK(std::abs(realized / target - 1.0) < 0.05);
    }
}

TEST_CASE("noise displacement scales linearly with the level")
{
    const TriMesh m = make_icosphere(5);
    const TriMesh small = add_gaussian_noise(m, {0.1, NoiseMode::IidCoordinate, 3});
    const TriMesh large = add_gaussian_noise(m, {0.4, NoiseMode::IidCoordinate, 3});
    for (int i = 0; i < m.vertex_count(); ++i) {
        const Vec3 a = small.vertices[i] - m.vertices[i];
        const Vec3 b = large.vertices[i] - m.vertices[i];
        CHECK((b - 4.0 * a).norm() <= 1e-12);
    }
    const TriMesh other = add_gaussian_noise(m, {0.4, NoiseMode::IidCoordinate, 4});
    const double ratio = displacement_stddev(m, other) / displacement_stddev(m, small);
    CHECK(std::abs(ratio / 4.0 - 1.0) < 0.05);
}

TEST_CASE("mean angular difference")
{
    const FaceField a = unit_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
    CHECK(mean_angular_difference(a, a) == 0.0);
    const FaceField sphere = face_normals(make_icosphere(3));
    CHECK(mean_angular_difference(sphere, sphere) == 0.0);

    const FaceField b = unit_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}});
    CHECK(mean_angular_difference(a, b) == doctest::Approx(90.0).epsilon(1e-12));

    const double c60 = std::cos(M_PI / 3), s60 = std::sin(M_PI / 3);
    const FaceField x = unit_rows({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
    const FaceField y = unit_rows({{0, 0, 1}, {0, 0, 1}, {s60, 0, c60}, {0, s60, c60}});
    CHECK(mean_angular_difference(x, y) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(mean_angular_difference(y, x) == mean_angular_difference(x, y));

    FaceField flipped = x;
    flipped.row(2) *= -1.0;
    const auto errors = face_angular_errors(x, flipped);
    CHECK(std::count(errors.begin(), errors.end(), 180.0) == 1);
    CHECK(std::count(errors.begin(), errors.end(), 0.0) == 3);

    CHECK_THROWS_AS(mean_angular_difference(x, FaceField(3, 3)), ShapeError);
}

TEST_CASE("face error CSV")
{
    const TriMesh clean = make_cube(4);
    const TriMesh noisy = add_gaussian_noise(clean, {0.2, NoiseMode::IidCoordinate, 1});
    const auto errors = face_angular_errors(face_normals(noisy), face_normals(clean));
    const fs::path dir = fs::temp_directory_path() / "mtgv_tests";
    fs::create_directories(dir);
    const fs::path p = dir / "errors.csv";
    write_face_error_csv(errors, p);

    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line == "face,degrees");
    double sum = 0.0;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        CHECK(std::stoi(line.substr(0, comma)) == rows);
        sum += std::stod(line.substr(comma + 1));
        ++rows;
    }
    CHECK(rows == clean.face_count());
    CHECK(sum / rows == doctest::Approx(mean_angular_difference(face_normals(noisy), face_normals(clean))).epsilon(1e-12));
}

TEST_CASE("vertex error matches brute force")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const TriMesh a = random_soup(20, rng);
        const TriMesh b = random_soup(20, rng);
        const double fast = vertex_error(a, b);
        const double brute = oracle::brute_vertex_error(a, b);
        CHECK(std::abs(fast - brute) <= 1e-12);
    }

    const TriMesh cube = make_cube(5);
    CHECK(vertex_error(cube, cube) == 0.0);
    const TriMesh noisy = add_gaussian_noise(cube, {0.3, NoiseMode::IidCoordinate, 8});
    CHECK(std::abs(vertex_error(noisy, cube) - oracle::brute_vertex_error(noisy, cube)) <= 1e-12);
}

TEST_CASE("vertex error examples and invariants")
{
    TriMesh square;
    square.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    square.faces = {{0, 1, 2}, {0, 2, 3}};
    TriMesh lifted = square;
    lifted.vertices[2].z() = 0.25;
    CHECK(vertex_error(lifted, square) == doctest::Approx(0.25 / 4.0 / std::sqrt(2.0)).epsilon(1e-14));

    std::mt19937_64 rng(5);
    const TriMesh a = random_soup(20, rng), b = random_soup(20, rng);
    TriMesh ta = a, tb = b;
    const Vec3 shift(3.5, -2.0, 7.25);
    for (auto& v : ta.vertices) v += shift;
    for (auto& v : tb.vertices) v += shift;
    CHECK(vertex_error(ta, tb) == doctest::Approx(vertex_error(a, b)).epsilon(1e-12));

    CHECK_THROWS_AS(vertex_error(TriMesh{}, square), ShapeError);
    CHECK_THROWS_AS(vertex_error(square, TriMesh{}), ShapeError);
}

TEST_CASE("closest point on triangle")
{
    const Vec3 a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
    CHECK((closest_point_on_triangle({0.2, 0.2, 1}, a, b, c) - Vec3(0.2, 0.2, 0)).norm() < 1e-15);
    CHECK((closest_point_on_triangle({-1, -1, 0}, a, b, c) - a).norm() < 1e-15);
    CHECK((closest_point_on_triangle({0.5, -2, 0}, a, b, c) - Vec3(0.5, 0, 0)).norm() < 1e-15);
    CHECK((closest_point_on_triangle({1, 1, 0}, a, b, c) - Vec3(0.5, 0.5, 0)).norm() < 1e-15);
}
