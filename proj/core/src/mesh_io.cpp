#include "bonnet/mesh_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bonnet/errors.hpp"

namespace bonnet {

namespace {

void put_le(std::ostream& out, const void* p, size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(b), static_cast<std::streamsize>(n));
    } else {
        for (size_t i = 0; i < n; ++i) out.put(static_cast<char>(b[n - 1 - i]));
    }
}

template <class T>
T get_le(std::istream& in) {
    unsigned char b[sizeof(T)];
    in.read(reinterpret_cast<char*>(b), sizeof(T));
    if (!in) throw Error(ErrorCode::io_failure, "PLY: truncated body");
    if constexpr (std::endian::native != std::endian::little) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_faces(const Mesh& m) {
    const int nvtx = static_cast<int>(m.vertices.size());
    for (const auto& f : m.faces)
        for (int k : f)
            if (k < 0 || k >= nvtx) throw Error(ErrorCode::grid_mismatch, "face index out of range");
    for (const auto& [name, vals] : m.scalars)
        if (static_cast<int>(vals.size()) != nvtx)
            throw Error(ErrorCode::grid_mismatch, "scalar field " + name + " has the wrong length");
}

}  // namespace

Mesh grid_mesh(int nu, int nv, bool closed_u, bool closed_v, std::vector<Vec3> vertices) {
    if (nu < 1 || nv < 1 || static_cast<int>(vertices.size()) != nu * nv)
        throw Error(ErrorCode::grid_mismatch, "grid mesh: vertex count does not match nu * nv");
    Mesh m;
    m.nu = nu;
    m.nv = nv;
    m.closed = {closed_u, closed_v};
    m.vertices = std::move(vertices);
    const int qu = closed_u ? nu : nu - 1, qv = closed_v ? nv : nv - 1;
    for (int i = 0; i < qu; ++i)
        for (int j = 0; j < qv; ++j) {
            const int i1 = (i + 1) % nu, j1 = (j + 1) % nv;
            m.faces.push_back({i * nv + j, i1 * nv + j, i1 * nv + j1, i * nv + j1});
        }
    return m;
}

MeshFormat format_from_path(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ply") == 0) return MeshFormat::ply;
    return MeshFormat::obj;
}

void export_mesh(const Mesh& m, const std::string& path, MeshFormat fmt) {
    check_faces(m);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path);
    const std::string grid = "grid " + std::to_string(m.nu) + " " + std::to_string(m.nv) + " " +
                             (m.closed[0] ? "1" : "0") + " " + (m.closed[1] ? "1" : "0");
    if (fmt == MeshFormat::obj) {
        if (!m.comment.empty()) out << "# " << m.comment << '\n';
        out << "# " << grid << '\n';
        for (const auto& [name, vals] : m.scalars) {
            out << "# scalar " << name;
            for (double x : vals) out << ' ' << fmt17(x);
            out << '\n';
        }
        for (const auto& v : m.vertices) out << "v " << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.z) << '\n';
        for (const auto& f : m.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
    } else {
        out << "ply\nformat binary_little_endian 1.0\n";
        if (!m.comment.empty()) out << "comment " << m.comment << '\n';
        out << "comment " << grid << '\n';
        out << "element vertex " << m.vertices.size() << '\n';
        out << "property double x\nproperty double y\nproperty double z\n";
        for (const auto& kv : m.scalars) out << "property double " << kv.first << '\n';
        out << "element face " << m.faces.size() << '\n';
        out << "property list uchar int vertex_indices\nend_header\n";
        for (size_t i = 0; i < m.vertices.size(); ++i) {
            const Vec3& v = m.vertices[i];
            put_le(out, &v.x, 8);
            put_le(out, &v.y, 8);
            put_le(out, &v.z, 8);
            for (const auto& kv : m.scalars) put_le(out, &kv.second[i], 8);
        }
        for (const auto& f : m.faces) {
            const unsigned char four = 4;
            out.put(static_cast<char>(four));
            for (int k : f) {
                const std::int32_t x = k;
                put_le(out, &x, 4);
            }
        }
    }
    if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path);
}

namespace {

void parse_grid(const std::string& line, Mesh& m) {
    std::istringstream ss(line);
    std::string tag;
    int cu = 0, cv = 0;
    ss >> tag >> m.nu >> m.nv >> cu >> cv;
    m.closed = {cu != 0, cv != 0};
}

Mesh read_obj(std::istream& in) {
    Mesh m;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# grid ", 0) == 0) {
            parse_grid(line.substr(2), m);
        } else if (line.rfind("# scalar ", 0) == 0) {
            std::istringstream ss(line.substr(9));
            std::string name;
            ss >> name;
            std::vector<double> vals;
            double x;
            while (ss >> x) vals.push_back(x);
            m.scalars[name] = std::move(vals);
        } else if (line.rfind("v ", 0) == 0) {
            std::istringstream ss(line.substr(2));
            Vec3 v;
            ss >> v.x >> v.y >> v.z;
            m.vertices.push_back(v);
        } else if (line.rfind("f ", 0) == 0) {
            std::istringstream ss(line.substr(2));
            std::array<int, 4> f{};
            for (int& k : f) {
                ss >> k;
                --k;
            }
            m.faces.push_back(f);
        }
    }
    return m;
}

Mesh read_ply(std::istream& in) {
    Mesh m;
    std::string line;
    std::getline(in, line);
    if (line != "ply") throw Error(ErrorCode::io_failure, "not a PLY file");
    size_t nvtx = 0, nface = 0;
    std::vector<std::string> props;
    bool in_vertex = false;
    while (std::getline(in, line)) {
        if (line == "end_header") break;
        std::istringstream ss(line);
        std::string w;
        ss >> w;
        if (w == "format") {
            std::string f;
            ss >> f;
            if (f != "binary_little_endian") throw Error(ErrorCode::io_failure, "only binary little endian PLY is supported");
        } else if (w == "comment") {
            std::string rest;
            std::getline(ss, rest);
            if (rest.rfind(" grid ", 0) == 0) parse_grid(rest.substr(1), m);
        } else if (w == "element") {
            std::string what;
            size_t n;
            ss >> what >> n;
            in_vertex = what == "vertex";
            if (in_vertex) nvtx = n;
            else nface = n;
        } else if (w == "property" && in_vertex) {
            std::string type, name;
            ss >> type >> name;
            if (type != "double") throw Error(ErrorCode::io_failure, "PLY vertex properties must be double");
            props.push_back(name);
        }
    }
    m.vertices.resize(nvtx);
    for (size_t p = 3; p < props.size(); ++p) m.scalars[props[p]].resize(nvtx);
    for (size_t i = 0; i < nvtx; ++i) {
        for (size_t p = 0; p < props.size(); ++p) {
            const double x = get_le<double>(in);
            if (p < 3) m.vertices[i][static_cast<int>(p)] = x;
            else m.scalars[props[p]][i] = x;
        }
    }
    for (size_t f = 0; f < nface; ++f) {
        const auto cnt = get_le<unsigned char>(in);
        if (cnt != 4) throw Error(ErrorCode::io_failure, "PLY faces must be quads");
        std::array<int, 4> q{};
        for (int& k : q) k = get_le<std::int32_t>(in);
        m.faces.push_back(q);
    }
    return m;
}

}  // namespace

Mesh read_mesh(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path);
    Mesh m = format_from_path(path) == MeshFormat::ply ? read_ply(in) : read_obj(in);
    check_faces(m);
    return m;
}

}  // namespace bonnet
