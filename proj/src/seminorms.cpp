#include "mtgv/seminorms.hpp"

#include "mtgv/error.hpp"
#include "mtgv/operators.hpp"

#include <stdexcept>

namespace mtgv {

double edge_l1(const MeshStencils& s, const EdgeField& v, std::span<const double> weights)
{
    if (v.size() != s.edge_count()) throw ShapeError("edge_l1: field size does not match edge count");
    if (!weights.empty() && static_cast<int>(weights.size()) != s.edge_count())
        throw ShapeError("edge_l1: weight count does not match edge count");
    double total = 0.0;
    for (int e = 0; e < s.edge_count(); ++e) {
        const double w = weights.empty() ? 1.0 : weights[e];
        total += w * v.row(e).norm() * s.topology.edge_length[e];
    }
    return total;
}

double line_l1(const MeshStencils& s, const LineField& w)
{
    if (w.size() != s.line_count()) throw ShapeError("line_l1: field size does not match line count");
    double total = 0.0;
    for (int i = 0; i < s.line_count(); ++i) total += w.row(i).norm() * s.lines.lines[i].length;
    return total;
}

double curve_l1(const MeshStencils& s, const CurveField& w)
{
    if (w.size() != s.curve_count()) throw ShapeError("curve_l1: field size does not match curve count");
    double total = 0.0;
    for (int i = 0; i < s.curve_count(); ++i) total += w.row(i).norm() * s.curves.curves[i].length;
    return total;
}

double second_order_term(const MeshStencils& s, const EdgeField& v)
{
    return line_l1(s, d1(s, v)) + curve_l1(s, d2(s, v));
}

double tv_seminorm(const MeshStencils& s, const FaceField& u) { return edge_l1(s, d_m(s, u)); }

double ho_seminorm(const MeshStencils& s, const FaceField& u)
{
    if (u.size() != s.face_count()) throw ShapeError("ho_seminorm: field size does not match face count");
    double total = 0.0;
    for (const Line& l : s.lines.lines) {
        if (!l.valid) continue;
        total += (2.0 * u.row(l.face) - u.row(l.face_in) - u.row(l.face_out)).norm() * l.length;
    }
    return total;
}

double tgv_energy(const MeshStencils& s, const FaceField& u, const EdgeField& v, double alpha1, double alpha0)
{
    if (!(alpha1 > 0.0) || !(alpha0 > 0.0)) throw std::invalid_argument("tgv_energy: alpha1 and alpha0 must be positive");
    return alpha1 * edge_l1(s, d_m(s, u) - v) + alpha0 * second_order_term(s, v);
}

int tv_support_count(const MeshStencils& s, const FaceField& u, double threshold)
{
    const EdgeField g = d_m(s, u);
    int count = 0;
    for (int e = 0; e < s.edge_count(); ++e)
        if (g.row(e).norm() > threshold) ++count;
    return count;
}

}  // namespace mtgv
