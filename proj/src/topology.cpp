#include "mtgv/topology.hpp"

#include "mtgv/error.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mtgv {

int EdgeTopology::slot_of(int e, int f) const
{
    for (int k = 0; k < 3; ++k)
        if (face_edges[f][k] == e) return k;
    return kNone;
}

int EdgeTopology::sign(int e, int f) const
{
    const int k = slot_of(e, f);
    if (k == kNone)
        throw std::out_of_range("edge " + std::to_string(e) + " is not an edge of face " + std::to_string(f));
    return face_edge_signs[f][k];
}

EdgeTopology build_edge_topology(const TriMesh& mesh, EdgeOrientation orientation)
{
    EdgeTopology topo;
    const int nf = mesh.face_count();
    topo.face_edges.resize(nf);
    topo.face_edge_signs.resize(nf);
    topo.face_area.resize(nf);
    topo.barycenter.resize(nf);

    std::unordered_map<std::uint64_t, int> index;
    index.reserve(static_cast<std::size_t>(nf) * 2);
    const auto nv = static_cast<std::uint64_t>(mesh.vertex_count());

    for (int f = 0; f < nf; ++f) {
        const Face& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            const int lo = std::min(a, b), hi = std::max(a, b);
            const std::uint64_t key = static_cast<std::uint64_t>(lo) * nv + static_cast<std::uint64_t>(hi);
            auto [it, fresh] = index.emplace(key, topo.edge_count());
            const int e = it->second;
            if (fresh) {
                topo.edges.push_back(orientation == EdgeOrientation::Ascending ? std::array{lo, hi}
                                                                               : std::array{hi, lo});
                topo.edge_faces.push_back({f, kNone});
                topo.edge_length.push_back((mesh.vertices[a] - mesh.vertices[b]).norm());
            } else {
                if (topo.edge_faces[e][1] != kNone)
                    throw ValidationError("edge (" + std::to_string(lo) + ", " + std::to_string(hi) +
                                          ") is non-manifold (third incident face " + std::to_string(f) + ")");
                topo.edge_faces[e][1] = f;
            }
            topo.face_edges[f][k] = e;
            topo.face_edge_signs[f][k] = (topo.edges[e][0] == a) ? std::int8_t{1} : std::int8_t{-1};
        }
        topo.face_area[f] = face_area(mesh, f);
        topo.barycenter[f] = face_centroid(mesh, f);
    }

    topo.boundary.resize(topo.edges.size());
    for (int e = 0; e < topo.edge_count(); ++e) {
        const auto [f0, f1] = topo.edge_faces[e];
        topo.boundary[e] = f1 == kNone;
        if (f1 != kNone && topo.sign(e, f0) * topo.sign(e, f1) != -1)
            throw ValidationError("faces " + std::to_string(f0) + " and " + std::to_string(f1) +
                                  " are inconsistently oriented across edge " + std::to_string(e));
    }
    return topo;
}

std::vector<double> LineSet::lengths() const
{
    std::vector<double> out(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) out[i] = lines[i].length;
    return out;
}

std::vector<double> CurveSet::lengths() const
{
    std::vector<double> out(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) out[i] = curves[i].length;
    return out;
}

LineSet build_line_set(const TriMesh& mesh, const EdgeTopology& topo)
{
    LineSet set;
    const int nf = topo.face_count();
    set.lines.resize(static_cast<std::size_t>(nf) * 3);
    set.by_edge.resize(topo.edges.size());

    for (int f = 0; f < nf; ++f) {
        for (int k = 0; k < 3; ++k) {
            Line& l = set.lines[3 * f + k];
            l.face = f;
            l.vertex = mesh.faces[f][k];
            l.edge_in = topo.face_edges[f][(k + 2) % 3];
            l.edge_out = topo.face_edges[f][k];
            l.face_in = topo.opposite_face(l.edge_in, f);
            l.face_out = topo.opposite_face(l.edge_out, f);
            l.length = (topo.barycenter[f] - mesh.vertices[l.vertex]).norm();
            l.valid = !topo.is_boundary(l.edge_in) && !topo.is_boundary(l.edge_out);
            set.by_edge[l.edge_in].push_back(3 * f + k);
            set.by_edge[l.edge_out].push_back(3 * f + k);
        }
    }
    return set;
}

namespace {

int local_index(const Face& t, int v)
{
    for (int k = 0; k < 3; ++k)
        if (t[k] == v) return k;
    return kNone;
}

// The edge of face f incident to vertex v other than `skip`.
int other_edge_at(const TriMesh& mesh, const EdgeTopology& topo, int f, int v, int skip)
{
    const int k = local_index(mesh.faces[f], v);
    // Slots k and k+2 are the two edges of f touching its k-th vertex.
    const int a = topo.face_edges[f][k];
    const int b = topo.face_edges[f][(k + 2) % 3];
    return a == skip ? b : a;
}

}  // namespace

CurveSet build_curve_set(const TriMesh& mesh, const EdgeTopology& topo, const LineSet& lines)
{
    CurveSet set;
    set.curves.resize(lines.lines.size());
    set.by_edge.resize(topo.edges.size());

    for (int i = 0; i < lines.size(); ++i) {
        const Line& l = lines.lines[i];
        Curve& c = set.curves[i];
        c.line = i;
        const int p = l.vertex;

        double len_in = l.length, len_out = l.length;
        int e_in_in = kNone, e_out_out = kNone;
        if (l.face_in != kNone) {
            e_in_in = other_edge_at(mesh, topo, l.face_in, p, l.edge_in);
            c.face_in_in = topo.opposite_face(e_in_in, l.face_in);
            len_in = lines.lines[3 * l.face_in + local_index(mesh.faces[l.face_in], p)].length;
        }
        if (l.face_out != kNone) {
            e_out_out = other_edge_at(mesh, topo, l.face_out, p, l.edge_out);
            c.face_out_out = topo.opposite_face(e_out_out, l.face_out);
            len_out = lines.lines[3 * l.face_out + local_index(mesh.faces[l.face_out], p)].length;
        }
        c.length = 0.25 * (len_out + 2.0 * l.length + len_in);

        c.edges = {e_out_out, l.edge_in, l.edge_out, e_in_in};
        c.sign_faces = {l.face_out, l.face_in, l.face_out, l.face_in};
        c.valid = true;
        for (int s = 0; s < 4; ++s) {
            const int e = c.edges[s];
            const int f = c.sign_faces[s];
            if (e == kNone || f == kNone || topo.is_boundary(e)) {
                c.valid = false;
                continue;
            }
            c.signs[s] = static_cast<std::int8_t>(topo.sign(e, f));
        }
        for (int s = 0; s < 4; ++s)
            if (c.edges[s] != kNone) set.by_edge[c.edges[s]].push_back({i, s});
    }
    return set;
}

MeshStencils MeshStencils::build(const TriMesh& mesh, EdgeOrientation orientation)
{
    MeshStencils s;
    s.topology = build_edge_topology(mesh, orientation);
    s.lines = build_line_set(mesh, s.topology);
    s.curves = build_curve_set(mesh, s.topology, s.lines);
    return s;
}

}  // namespace mtgv
