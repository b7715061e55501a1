#pragma once

#include "mtgv/mesh.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace mtgv {

inline constexpr int kNone = -1;

/// Stored direction of every edge. Downstream norms and filtered normals do
/// not depend on this choice; only the signs sgn(e, face) do.
enum class EdgeOrientation { Ascending, Descending };

/// Edges of a manifold triangle mesh with their incident faces and the
/// relative orientation of each edge against each incident face.
///
/// Face slot k of triangle (v0, v1, v2) is the edge from v_k to v_{k+1}.
struct EdgeTopology {
    std::vector<std::array<int, 2>> edges;        ///< stored (tail, head)
    std::vector<std::array<int, 2>> edge_faces;   ///< incident faces, second is kNone on the boundary
    std::vector<std::array<int, 3>> face_edges;   ///< edge index per face slot
    std::vector<std::array<std::int8_t, 3>> face_edge_signs;  ///< sgn(edge, face) per face slot
    std::vector<std::uint8_t> boundary;
    std::vector<double> edge_length;
    std::vector<double> face_area;
    std::vector<Vec3> barycenter;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int face_count() const { return static_cast<int>(face_edges.size()); }
    bool is_boundary(int e) const { return boundary[e] != 0; }

    /// sgn(e, f); throws std::out_of_range if e is not an edge of f.
    int sign(int e, int f) const;
    /// Face across edge e from f, or kNone on the boundary.
    int opposite_face(int e, int f) const { return edge_faces[e][0] == f ? edge_faces[e][1] : edge_faces[e][0]; }
    /// Local slot of edge e in face f, or kNone.
    int slot_of(int e, int f) const;
};

/// Segment from a face barycenter to one of its vertices.
///
/// `edge_in` (e+) enters the vertex in counterclockwise order and `edge_out`
/// (e-) leaves it; `face_in` / `face_out` are the faces across them.
struct Line {
    int face = kNone;
    int vertex = kNone;
    int edge_in = kNone;
    int edge_out = kNone;
    int face_in = kNone;
    int face_out = kNone;
    double length = 0.0;
    bool valid = false;  ///< both edges interior; otherwise the 1-form jump is 0
};

/// Three lines per face; line 3f + k ends at the k-th vertex of face f.
struct LineSet {
    std::vector<Line> lines;
    /// Lines having e as edge_in or edge_out (validity not filtered).
    std::vector<std::vector<int>> by_edge;

    int size() const { return static_cast<int>(lines.size()); }
    std::vector<double> lengths() const;
};

/// Four-edge stencil wrapped around the vertex of a line.
///
/// Term order is (e--, e+, e-, e++) with the faces whose orientation signs the
/// term: (face_out, face_in, face_out, face_in).
struct Curve {
    int line = kNone;
    std::array<int, 4> edges{kNone, kNone, kNone, kNone};
    std::array<std::int8_t, 4> signs{0, 0, 0, 0};
    std::array<int, 4> sign_faces{kNone, kNone, kNone, kNone};
    int face_in_in = kNone;    ///< across e++ from face_in
    int face_out_out = kNone;  ///< across e-- from face_out
    double length = 0.0;
    bool valid = false;  ///< all four edges interior
};

struct CurveTerm {
    int curve;
    int slot;
};

struct CurveSet {
    std::vector<Curve> curves;
    /// Stencil terms referencing each edge; an edge may appear twice in one
    /// curve around a valence-3 vertex.
    std::vector<std::vector<CurveTerm>> by_edge;

    int size() const { return static_cast<int>(curves.size()); }
    std::vector<double> lengths() const;
};

EdgeTopology build_edge_topology(const TriMesh& mesh, EdgeOrientation orientation = EdgeOrientation::Ascending);
LineSet build_line_set(const TriMesh& mesh, const EdgeTopology& topo);
CurveSet build_curve_set(const TriMesh& mesh, const EdgeTopology& topo, const LineSet& lines);

/// Everything the discrete operators need, built once per mesh.
struct MeshStencils {
    EdgeTopology topology;
    LineSet lines;
    CurveSet curves;

    int face_count() const { return topology.face_count(); }
    int edge_count() const { return topology.edge_count(); }
    int line_count() const { return lines.size(); }
    int curve_count() const { return curves.size(); }

    static MeshStencils build(const TriMesh& mesh, EdgeOrientation orientation = EdgeOrientation::Ascending);
};

}  // namespace mtgv
