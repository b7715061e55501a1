#include "mtgv/generators.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace mtgv {

namespace {

// Appends triangle (a, b, c), reversing it if it does not face `outward`.
void push_oriented(TriMesh& mesh, int a, int b, int c, const Vec3& outward)
{
    const Vec3 n = (mesh.vertices[b] - mesh.vertices[a]).cross(mesh.vertices[c] - mesh.vertices[a]);
    if (n.dot(outward) >= 0.0)
        mesh.faces.push_back({a, b, c});
    else
        mesh.faces.push_back({a, c, b});
}

}  // namespace

TriMesh make_tetrahedron()
{
    TriMesh m;
    const double s = 1.0 / std::sqrt(8.0);  // scales (+-1, +-1, +-1) corners to unit edges
    m.vertices = {Vec3(1, 1, 1) * s, Vec3(1, -1, -1) * s, Vec3(-1, 1, -1) * s, Vec3(-1, -1, 1) * s};
    const int tris[4][3] = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    for (const auto& t : tris) {
        const Vec3 centroid = (m.vertices[t[0]] + m.vertices[t[1]] + m.vertices[t[2]]) / 3.0;
        push_oriented(m, t[0], t[1], t[2], centroid);
    }
    return m;
}

TriMesh make_cube(int subdivisions, double side)
{
    if (subdivisions < 1) throw std::invalid_argument("make_cube: subdivisions must be at least 1");
    const int n = subdivisions;
    TriMesh m;
    std::map<std::array<int, 3>, int> lattice;
    auto vertex = [&](std::array<int, 3> ijk) {
        auto [it, fresh] = lattice.emplace(ijk, m.vertex_count());
        if (fresh) {
            Vec3 p;
            for (int k = 0; k < 3; ++k) p[k] = side * (static_cast<double>(ijk[k]) / n - 0.5);
            m.vertices.push_back(p);
        }
        return it->second;
    };

    for (int axis = 0; axis < 3; ++axis) {
        const int u = (axis + 1) % 3, w = (axis + 2) % 3;
        for (int level : {0, n}) {
            Vec3 outward = Vec3::Zero();
            outward[axis] = level == 0 ? -1.0 : 1.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    auto at = [&](int di, int dj) {
                        std::array<int, 3> ijk{};
                        ijk[axis] = level;
                        ijk[u] = i + di;
                        ijk[w] = j + dj;
                        return vertex(ijk);
                    };
                    const int a = at(0, 0), b = at(1, 0), c = at(1, 1), d = at(0, 1);
                    push_oriented(m, a, b, c, outward);
                    push_oriented(m, a, c, d, outward);
                }
            }
        }
    }
    return m;
}

TriMesh make_icosphere(int levels, double radius)
{
    if (levels < 0) throw std::invalid_argument("make_icosphere: levels must be non-negative");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriMesh m;
    m.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : m.vertices) p.normalize();
    m.faces = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
               {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
               {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int level = 0; level < levels; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto [it, fresh] = midpoint.emplace(key, m.vertex_count());
            if (fresh) m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
            return it->second;
        };
        std::vector<Face> next;
        next.reserve(m.faces.size() * 4);
        for (const auto& f : m.faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.faces = std::move(next);
    }
    for (auto& p : m.vertices) p *= radius;
    return m;
}

TriMesh make_grid(int nx, int ny, double width, double height)
{
    if (nx < 1 || ny < 1) throw std::invalid_argument("make_grid: cell counts must be at least 1");
    TriMesh m;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) m.vertices.emplace_back(width * i / nx, height * j / ny, 0.0);
    auto id = [&](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return m;
}

}  // namespace mtgv
