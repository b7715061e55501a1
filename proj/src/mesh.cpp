#include "mtgv/mesh.hpp"

#include "mtgv/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace mtgv {

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_double(std::string_view tok, double& out)
{
    // std::from_chars for double is available in libstdc++ 11.
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_long(std::string_view tok, long long& out)
{
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::ifstream open_for_read(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file '" + path.string() + "'");
    return in;
}

TriMesh read_obj(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    TriMesh mesh;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string_view kind = tok[0];

        if (kind == "v") {
            if (tok.size() != 4 && tok.size() != 5) fail("vertex record needs 3 coordinates");
            Vec3 p;
            for (int k = 0; k < 3; ++k)
                if (!parse_double(tok[k + 1], p[k])) fail("bad vertex coordinate '" + std::string(tok[k + 1]) + "'");
            mesh.vertices.push_back(p);
        } else if (kind == "f") {
            const int face_index = mesh.face_count();
            if (tok.size() != 4)
                fail("face " + std::to_string(face_index) + " has " + std::to_string(tok.size() - 1) +
                     " vertices; only triangles are supported");
            Face f{};
            for (int k = 0; k < 3; ++k) {
                long long idx = 0;
                if (tok[k + 1].find('/') != std::string_view::npos)
                    fail("face " + std::to_string(face_index) + ": texture/normal references are not supported");
                if (!parse_long(tok[k + 1], idx)) fail("face " + std::to_string(face_index) + ": bad index");
                if (idx <= 0)
                    fail("face " + std::to_string(face_index) + ": non-positive index " + std::to_string(idx));
                if (idx > std::numeric_limits<int>::max()) fail("face " + std::to_string(face_index) + ": index overflow");
                f[k] = static_cast<int>(idx - 1);
            }
            mesh.faces.push_back(f);
        } else if (kind == "o" || kind == "g" || kind == "s" || kind == "usemtl" || kind == "mtllib") {
            continue;
        } else {
            fail("unsupported record '" + std::string(kind) + "'");
        }
    }
    return mesh;
}

TriMesh read_off(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    // Token stream with line numbers; OFF allows arbitrary line breaking.
    std::vector<std::pair<std::string, std::size_t>> tokens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (auto t : split_ws(line)) tokens.emplace_back(std::string(t), line_no);
    }

    std::size_t pos = 0;
    auto where = [&]() {
        const std::size_t ln = pos < tokens.size() ? tokens[pos].second : line_no;
        return path.string() + ":" + std::to_string(ln) + ": ";
    };
    auto next_long = [&](const char* what) {
        long long v = 0;
        if (pos >= tokens.size()) throw ParseError(where() + "unexpected end of file reading " + what);
        if (!parse_long(tokens[pos].first, v)) throw ParseError(where() + "bad " + std::string(what));
        ++pos;
        return v;
    };

    if (tokens.empty() || tokens[0].first != "OFF") throw ParseError(path.string() + ": missing OFF header");
    pos = 1;
    const long long nv = next_long("vertex count");
    const long long nf = next_long("face count");
    next_long("edge count");
    if (nv < 0 || nf < 0) throw ParseError(where() + "negative element count");

    TriMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) {
            if (pos >= tokens.size())
                throw ParseError(where() + "unexpected end of file in vertex " + std::to_string(i));
            if (!parse_double(tokens[pos].first, p[k]))
                throw ParseError(where() + "bad coordinate in vertex " + std::to_string(i));
            ++pos;
        }
        mesh.vertices.push_back(p);
    }
    mesh.faces.reserve(static_cast<std::size_t>(nf));
    for (long long i = 0; i < nf; ++i) {
        const long long n = next_long("face vertex count");
        if (n != 3)
            throw ParseError(where() + "face " + std::to_string(i) + " has " + std::to_string(n) +
                             " vertices; only triangles are supported");
        Face f{};
        for (int k = 0; k < 3; ++k) {
            const long long idx = next_long("face index");
            if (idx < 0 || idx > std::numeric_limits<int>::max())
                throw ParseError(where() + "face " + std::to_string(i) + ": bad index " + std::to_string(idx));
            f[k] = static_cast<int>(idx);
        }
        mesh.faces.push_back(f);
    }
    return mesh;
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path)
{
    const auto ext = lower(path.extension().string());
    if (ext == ".obj") return MeshFormat::Obj;
    if (ext == ".off") return MeshFormat::Off;
    throw IoError("cannot infer mesh format from extension of '" + path.string() + "' (expected .obj or .off)");
}

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format)
{
    TriMesh mesh = format == MeshFormat::Obj ? read_obj(path) : read_off(path);
    validate_mesh(mesh);
    return mesh;
}

TriMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_path(path)); }

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path, MeshFormat format)
{
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    if (format == MeshFormat::Obj) {
        for (const auto& p : mesh.vertices) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
        for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    } else {
        out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
        for (const auto& p : mesh.vertices) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
        for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
    const std::string text = out.str();
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw IoError("write to '" + path.string() + "' failed");
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path)
{
    save_mesh(mesh, path, format_from_path(path));
}

double bounding_box_diagonal(const TriMesh& mesh)
{
    if (mesh.vertices.empty()) return 0.0;
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const auto& p : mesh.vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

double degenerate_area_threshold(const TriMesh& mesh)
{
    const double d = bounding_box_diagonal(mesh);
    return 1e-12 * d * d;
}

double mean_edge_length(const TriMesh& mesh)
{
    // Each undirected edge counted once.
    std::unordered_map<std::uint64_t, double> lengths;
    const auto n = static_cast<std::uint64_t>(mesh.vertices.size());
    for (const auto& f : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const int a = std::min(f[k], f[(k + 1) % 3]);
            const int b = std::max(f[k], f[(k + 1) % 3]);
            lengths.emplace(static_cast<std::uint64_t>(a) * n + static_cast<std::uint64_t>(b),
                            (mesh.vertices[a] - mesh.vertices[b]).norm());
        }
    }
    if (lengths.empty()) return 0.0;
    // Sum in a fixed order so the result does not depend on hash layout.
    std::vector<std::pair<std::uint64_t, double>> sorted(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    for (const auto& [key, len] : sorted) total += len;
    return total / static_cast<double>(sorted.size());
}

Vec3 face_cross(const TriMesh& mesh, int f)
{
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    return (mesh.vertices[t[1]] - p0).cross(mesh.vertices[t[2]] - p0);
}

double face_area(const TriMesh& mesh, int f) { return 0.5 * face_cross(mesh, f).norm(); }

Vec3 face_centroid(const TriMesh& mesh, int f)
{
    const auto& t = mesh.faces[f];
    return (mesh.vertices[t[0]] + mesh.vertices[t[1]] + mesh.vertices[t[2]]) / 3.0;
}

FaceField face_normals(const TriMesh& mesh)
{
    FaceField n(mesh.face_count(), 3);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Vec3 c = face_cross(mesh, f);
        const double len = c.norm();
        if (len == 0.0) throw ValidationError("face " + std::to_string(f) + " has zero area");
        n.row(f) = (c / len).transpose();
    }
    return n;
}

void validate_mesh(const TriMesh& mesh)
{
    const int nv = mesh.vertex_count();
    const double area_eps = degenerate_area_threshold(mesh);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k)
            if (t[k] < 0 || t[k] >= nv)
                throw ValidationError("face " + std::to_string(f) + " references vertex " + std::to_string(t[k]) +
                                      " out of range [0, " + std::to_string(nv) + ")");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ValidationError("face " + std::to_string(f) + " repeats a vertex");
        if (!(face_area(mesh, f) > area_eps)) throw ValidationError("face " + std::to_string(f) + " is degenerate");
    }

    // Directed half-edges: a repeat means either a third face on the edge or two
    // faces traversing it the same way; both break the sgn(e, face) rules.
    std::unordered_map<std::uint64_t, int> directed;
    std::unordered_map<std::uint64_t, int> undirected;
    directed.reserve(mesh.faces.size() * 3);
    undirected.reserve(mesh.faces.size() * 3);
    const auto n = static_cast<std::uint64_t>(nv);
    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            const std::uint64_t key_dir = static_cast<std::uint64_t>(a) * n + static_cast<std::uint64_t>(b);
            const std::uint64_t key_und =
                static_cast<std::uint64_t>(std::min(a, b)) * n + static_cast<std::uint64_t>(std::max(a, b));
            if (++undirected[key_und] > 2)
                throw ValidationError("edge (" + std::to_string(std::min(a, b)) + ", " + std::to_string(std::max(a, b)) +
                                      ") is non-manifold (third incident face " + std::to_string(f) + ")");
            if (auto [it, fresh] = directed.emplace(key_dir, f); !fresh)
                throw ValidationError("faces " + std::to_string(it->second) + " and " + std::to_string(f) +
                                      " are inconsistently oriented across edge (" + std::to_string(a) + ", " +
                                      std::to_string(b) + ")");
        }
    }
}

template <Domain D>
void write_field_csv(const Field<D>& field, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.precision(17);
    for (Eigen::Index i = 0; i < field.size(); ++i) {
        out << i;
        for (Eigen::Index c = 0; c < field.channels(); ++c) out << ',' << field.values(i, c);
        out << '\n';
    }
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

template void write_field_csv(const FaceField&, const std::filesystem::path&);
template void write_field_csv(const EdgeField&, const std::filesystem::path&);
template void write_field_csv(const LineField&, const std::filesystem::path&);
template void write_field_csv(const CurveField&, const std::filesystem::path&);

}  // namespace mtgv
