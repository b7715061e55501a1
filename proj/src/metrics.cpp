#include "mtgv/metrics.hpp"

#include "mtgv/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>

namespace mtgv {

std::vector<double> face_angular_errors(const FaceField& a, const FaceField& b)
{
    if (a.size() != b.size() || a.channels() != 3 || b.channels() != 3)
        throw ShapeError("normal fields differ in face count (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ") or channel count");
    std::vector<double> out(static_cast<std::size_t>(a.size()));
    for (Eigen::Index f = 0; f < a.size(); ++f) {
        const Vec3 x = a.row(f).transpose(), y = b.row(f).transpose();
        // arccos(x . y) for unit vectors, without its rounding blow-up near 0 and 180.
        out[f] = std::atan2(x.cross(y).norm(), x.dot(y)) * 180.0 / std::numbers::pi;
    }
    return out;
}

double mean_angular_difference(const FaceField& a, const FaceField& b)
{
    const auto errors = face_angular_errors(a, b);
    if (errors.empty()) return 0.0;
    return std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
}

void write_face_error_csv(const std::vector<double>& degrees, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.precision(17);
    out << "face,degrees\n";
    for (std::size_t f = 0; f < degrees.size(); ++f) out << f << ',' << degrees[f] << '\n';
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c)
{
    // Voronoi-region walk over vertices, edges and the interior.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

    const double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

struct TriangleTree::Impl {
    struct Node {
        Eigen::AlignedBox3d box;
        int left = -1, right = -1;  // children, or -1 for a leaf
        int begin = 0, end = 0;     // range into `order` for leaves
    };

    std::vector<std::array<Vec3, 3>> tris;
    std::vector<int> order;
    std::vector<Node> nodes;

    static constexpr int kLeafSize = 8;

    int build(int begin, int end, const std::vector<Vec3>& centers)
    {
        Node node;
        for (int i = begin; i < end; ++i)
            for (const auto& v : tris[order[i]]) node.box.extend(v);
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(node);
        if (end - begin <= kLeafSize) {
            nodes[id].begin = begin;
            nodes[id].end = end;
            return id;
        }
        Eigen::AlignedBox3d cbox;
        for (int i = begin; i < end; ++i) cbox.extend(centers[order[i]]);
        int axis = 0;
        cbox.sizes().maxCoeff(&axis);
        const int mid = begin + (end - begin) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end, [&](int x, int y) {
            if (centers[x][axis] != centers[y][axis]) return centers[x][axis] < centers[y][axis];
            return x < y;
        });
        const int l = build(begin, mid, centers);
        const int r = build(mid, end, centers);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }

    void query(int id, const Vec3& p, double& best_sq) const
    {
        const Node& n = nodes[id];
        if (n.box.squaredExteriorDistance(p) >= best_sq) return;
        if (n.left < 0) {
            for (int i = n.begin; i < n.end; ++i) {
                const auto& t = tris[order[i]];
                best_sq = std::min(best_sq, (closest_point_on_triangle(p, t[0], t[1], t[2]) - p).squaredNorm());
            }
            return;
        }
        // Nearer child first tightens the bound sooner.
        const double dl = nodes[n.left].box.squaredExteriorDistance(p);
        const double dr = nodes[n.right].box.squaredExteriorDistance(p);
        if (dl <= dr) {
            query(n.left, p, best_sq);
            query(n.right, p, best_sq);
        } else {
            query(n.right, p, best_sq);
            query(n.left, p, best_sq);
        }
    }
};

TriangleTree::TriangleTree(const TriMesh& mesh) : impl_(std::make_unique<Impl>())
{
    if (mesh.faces.empty()) throw ShapeError("TriangleTree: mesh has no faces");
    std::vector<Vec3> centers;
    centers.reserve(mesh.faces.size());
    for (const auto& f : mesh.faces) {
        impl_->tris.push_back({mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]});
        centers.push_back((mesh.vertices[f[0]] + mesh.vertices[f[1]] + mesh.vertices[f[2]]) / 3.0);
    }
    impl_->order.resize(mesh.faces.size());
    std::iota(impl_->order.begin(), impl_->order.end(), 0);
    impl_->build(0, static_cast<int>(mesh.faces.size()), centers);
}

TriangleTree::~TriangleTree() = default;
TriangleTree::TriangleTree(TriangleTree&&) noexcept = default;
TriangleTree& TriangleTree::operator=(TriangleTree&&) noexcept = default;

double TriangleTree::distance(const Vec3& p) const
{
    double best = std::numeric_limits<double>::infinity();
    impl_->query(0, p, best);
    return std::sqrt(best);
}

double vertex_error(const TriMesh& denoised, const TriMesh& reference)
{
    if (denoised.vertices.empty() || reference.faces.empty())
        throw ShapeError("vertex_error: meshes must be non-empty");
    const TriangleTree tree(reference);
    double total = 0.0;
    for (const auto& p : denoised.vertices) total += tree.distance(p);
    return total / static_cast<double>(denoised.vertices.size()) / bounding_box_diagonal(reference);
}

}  // namespace mtgv
