#include "mtgv/operators.hpp"

#include "mtgv/error.hpp"

#include <string>
#include <vector>

namespace mtgv {

namespace {

template <Domain D>
void require_size(const Field<D>& f, Eigen::Index expected, const char* what)
{
    if (f.size() != expected)
        throw ShapeError(std::string(what) + ": field has " + std::to_string(f.size()) + " elements, mesh has " +
                         std::to_string(expected));
}

template <Domain D>
void require_same_shape(const Field<D>& a, const Field<D>& b, Eigen::Index expected, const char* what)
{
    require_size(a, expected, what);
    require_size(b, expected, what);
    if (a.channels() != b.channels())
        throw ShapeError(std::string(what) + ": channel counts differ (" + std::to_string(a.channels()) + " vs " +
                         std::to_string(b.channels()) + ")");
}

template <Domain D>
double weighted_inner(const Field<D>& a, const Field<D>& b, const std::vector<double>& measure)
{
    double total = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) total += measure[i] * a.row(i).dot(b.row(i));
    return total;
}

}  // namespace

double inner_u(const MeshStencils& s, const FaceField& a, const FaceField& b)
{
    require_same_shape(a, b, s.face_count(), "inner_u");
    return weighted_inner(a, b, s.topology.face_area);
}

double inner_v(const MeshStencils& s, const EdgeField& a, const EdgeField& b)
{
    require_same_shape(a, b, s.edge_count(), "inner_v");
    return weighted_inner(a, b, s.topology.edge_length);
}

double inner_wbar(const MeshStencils& s, const LineField& a, const LineField& b)
{
    require_same_shape(a, b, s.line_count(), "inner_wbar");
    double total = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) total += s.lines.lines[i].length * a.row(i).dot(b.row(i));
    return total;
}

double inner_wtilde(const MeshStencils& s, const CurveField& a, const CurveField& b)
{
    require_same_shape(a, b, s.curve_count(), "inner_wtilde");
    double total = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) total += s.curves.curves[i].length * a.row(i).dot(b.row(i));
    return total;
}

double norm_u(const MeshStencils& s, const FaceField& a) { return std::sqrt(inner_u(s, a, a)); }
double norm_v(const MeshStencils& s, const EdgeField& a) { return std::sqrt(inner_v(s, a, a)); }
double norm_wbar(const MeshStencils& s, const LineField& a) { return std::sqrt(inner_wbar(s, a, a)); }
double norm_wtilde(const MeshStencils& s, const CurveField& a) { return std::sqrt(inner_wtilde(s, a, a)); }

EdgeField d_m(const MeshStencils& s, const FaceField& u)
{
    require_size(u, s.face_count(), "d_m");
    const auto& topo = s.topology;
    EdgeField v(s.edge_count(), u.channels());
    for (int e = 0; e < s.edge_count(); ++e) {
        if (topo.is_boundary(e)) continue;
        const auto [f0, f1] = topo.edge_faces[e];
        v.row(e) = topo.sign(e, f0) * u.row(f0) + topo.sign(e, f1) * u.row(f1);
    }
    return v;
}

FaceField d_m_adj(const MeshStencils& s, const EdgeField& v)
{
    require_size(v, s.edge_count(), "d_m_adj");
    const auto& topo = s.topology;
    FaceField u(s.face_count(), v.channels());
    for (int f = 0; f < s.face_count(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const int e = topo.face_edges[f][k];
            if (topo.is_boundary(e)) continue;
            u.row(f) += (topo.face_edge_signs[f][k] * topo.edge_length[e]) * v.row(e);
        }
        u.row(f) *= -1.0 / topo.face_area[f];
    }
    return u;
}

LineField d1(const MeshStencils& s, const EdgeField& v)
{
    require_size(v, s.edge_count(), "d1");
    const auto& topo = s.topology;
    LineField w(s.line_count(), v.channels());
    for (int i = 0; i < s.line_count(); ++i) {
        const Line& l = s.lines.lines[i];
        if (!l.valid) continue;
        w.row(i) = topo.sign(l.edge_in, l.face) * v.row(l.edge_in) + topo.sign(l.edge_out, l.face) * v.row(l.edge_out);
    }
    return w;
}

EdgeField d1_adj(const MeshStencils& s, const LineField& w)
{
    require_size(w, s.line_count(), "d1_adj");
    const auto& topo = s.topology;
    EdgeField v(s.edge_count(), w.channels());
    for (int e = 0; e < s.edge_count(); ++e) {
        for (int i : s.lines.by_edge[e]) {
            const Line& l = s.lines.lines[i];
            if (!l.valid) continue;
            v.row(e) += (topo.sign(e, l.face) * l.length) * w.row(i);
        }
        v.row(e) *= -1.0 / topo.edge_length[e];
    }
    return v;
}

CurveField d2(const MeshStencils& s, const EdgeField& v)
{
    require_size(v, s.edge_count(), "d2");
    CurveField w(s.curve_count(), v.channels());
    for (int i = 0; i < s.curve_count(); ++i) {
        const Curve& c = s.curves.curves[i];
        if (!c.valid) continue;
        for (int k = 0; k < 4; ++k) w.row(i) += static_cast<double>(c.signs[k]) * v.row(c.edges[k]);
    }
    return w;
}

EdgeField d2_adj(const MeshStencils& s, const CurveField& w)
{
    require_size(w, s.curve_count(), "d2_adj");
    EdgeField v(s.edge_count(), w.channels());
    for (int e = 0; e < s.edge_count(); ++e) {
        for (const CurveTerm& t : s.curves.by_edge[e]) {
            const Curve& c = s.curves.curves[t.curve];
            if (!c.valid) continue;
            v.row(e) += (c.signs[t.slot] * c.length) * w.row(t.curve);
        }
        v.row(e) *= -1.0 / s.topology.edge_length[e];
    }
    return v;
}

Eigen::SparseMatrix<double> d_m_matrix(const MeshStencils& s)
{
    const auto& topo = s.topology;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(s.edge_count()) * 2);
    for (int e = 0; e < s.edge_count(); ++e) {
        if (topo.is_boundary(e)) continue;
        for (int f : topo.edge_faces[e]) t.emplace_back(e, f, topo.sign(e, f));
    }
    Eigen::SparseMatrix<double> m(s.edge_count(), s.face_count());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Eigen::SparseMatrix<double> d1_matrix(const MeshStencils& s)
{
    const auto& topo = s.topology;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(s.line_count()) * 2);
    for (int i = 0; i < s.line_count(); ++i) {
        const Line& l = s.lines.lines[i];
        if (!l.valid) continue;
        t.emplace_back(i, l.edge_in, topo.sign(l.edge_in, l.face));
        t.emplace_back(i, l.edge_out, topo.sign(l.edge_out, l.face));
    }
    Eigen::SparseMatrix<double> m(s.line_count(), s.edge_count());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Eigen::SparseMatrix<double> d2_matrix(const MeshStencils& s)
{
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(s.curve_count()) * 4);
    for (int i = 0; i < s.curve_count(); ++i) {
        const Curve& c = s.curves.curves[i];
        if (!c.valid) continue;
        // Duplicate (row, col) entries around valence-3 vertices are summed.
        for (int k = 0; k < 4; ++k) t.emplace_back(i, c.edges[k], c.signs[k]);
    }
    Eigen::SparseMatrix<double> m(s.curve_count(), s.edge_count());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

}  // namespace mtgv
