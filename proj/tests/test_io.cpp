#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <regex>

#include "bonnet/errors.hpp"
#include "bonnet/pipeline.hpp"
#include "fixtures.hpp"

using namespace bonnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("bonnet_test_io_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

Mesh torus_mesh(int nu, int nv) {
    std::vector<Vec3> v;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const double a = 2 * M_PI * i / nu, b = 2 * M_PI * j / nv;
            v.emplace_back((2 + std::cos(b)) * std::cos(a), (2 + std::cos(b)) * std::sin(a), std::sin(b) / 3.0);
        }
    Mesh m = grid_mesh(nu, nv, true, true, v);
    std::vector<double> s;
    for (int k = 0; k < nu * nv; ++k) s.push_back(std::sqrt(k + 0.1) / 7);
    m.scalars["eh"] = s;
    m.comment = "test torus";
    return m;
}

void check_same(const Mesh& a, const Mesh& b) {
    CHECK(a.nu == b.nu);
    CHECK(a.nv == b.nv);
    CHECK(a.closed == b.closed);
    CHECK(a.faces == b.faces);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (size_t k = 0; k < a.vertices.size(); ++k) {
        CHECK(a.vertices[k].x == b.vertices[k].x);
        CHECK(a.vertices[k].y == b.vertices[k].y);
        CHECK(a.vertices[k].z == b.vertices[k].z);
    }
    CHECK(a.scalars == b.scalars);
}

}  // namespace

TEST_CASE("grid faces: open and closed directions") {
    std::vector<Vec3> v(4);
    const Mesh open = grid_mesh(2, 2, false, false, v);
    REQUIRE(open.faces.size() == 1);
    CHECK(open.faces[0] == std::array<int, 4>{0, 2, 3, 1});
    const Mesh closed = grid_mesh(3, 4, true, true, std::vector<Vec3>(12));
    CHECK(closed.faces.size() == 12);
    // every vertex sits in exactly four quads
    std::vector<int> count(12);
    for (const auto& f : closed.faces)
        for (int k : f) ++count[k];
    for (int c : count) CHECK(c == 4);
    CHECK(grid_mesh(3, 4, true, false, std::vector<Vec3>(12)).faces.size() == 9);
    CHECK_THROWS_AS(grid_mesh(3, 4, true, true, std::vector<Vec3>(11)), Error);
}

TEST_CASE("OBJ round trip is exact") {
    const fs::path d = scratch("obj");
    const Mesh m = torus_mesh(7, 5);
    export_mesh(m, (d / "t.obj").string(), MeshFormat::obj);
    check_same(m, read_mesh((d / "t.obj").string()));
    std::ifstream in(d / "t.obj");
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("#", 0) == 0);
}

TEST_CASE("binary little endian PLY round trip is bit exact") {
    const fs::path d = scratch("ply");
    const Mesh m = torus_mesh(6, 9);
    const std::string path = (d / "t.ply").string();
    CHECK(format_from_path(path) == MeshFormat::ply);
    CHECK(format_from_path("x.obj") == MeshFormat::obj);
    export_mesh(m, path, MeshFormat::ply);
    check_same(m, read_mesh(path));
    std::ifstream in(path, std::ios::binary);
    std::string header, line;
    while (std::getline(in, line) && line != "end_header") header += line + "\n";
    CHECK(header.find("format binary_little_endian 1.0") != std::string::npos);
    CHECK(header.find("property double x") != std::string::npos);
    CHECK(header.find("property double eh") != std::string::npos);
    // first vertex x, stored little endian
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int k = 7; k >= 0; --k) bits = bits << 8 | b[k];
    double x;
    std::memcpy(&x, &bits, 8);
    CHECK(x == m.vertices[0].x);
}

TEST_CASE("reading missing or foreign files fails cleanly") {
    const fs::path d = scratch("bad");
    for (const char* name : {"nope.obj", "nope.ply"}) {
        try {
            read_mesh((d / name).string());
            FAIL("expected io_failure");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::io_failure);
        }
    }
    std::ofstream((d / "a.ply").string()) << "ply\nformat ascii 1.0\nend_header\n";
    CHECK_THROWS_AS(read_mesh((d / "a.ply").string()), Error);
}

TEST_CASE("verify_meshes rejects meshes on different grids") {
    const fs::path d = scratch("verify");
    export_mesh(torus_mesh(8, 8), (d / "isothermic.obj").string(), MeshFormat::obj);
    export_mesh(torus_mesh(8, 8), (d / "bonnet_plus.obj").string(), MeshFormat::obj);
    export_mesh(torus_mesh(8, 9), (d / "bonnet_minus.obj").string(), MeshFormat::obj);
    try {
        verify_meshes(d.string());
        FAIL("expected grid_mismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::grid_mismatch);
    }
    // identical meshes: congruent, equal edges
    export_mesh(torus_mesh(8, 8), (d / "bonnet_minus.obj").string(), MeshFormat::obj);
    const auto r = nlohmann::json::parse(verify_meshes(d.string()));
    CHECK(r["schema"] == 1);
    CHECK(r["edge_length_mismatch"].get<double>() == 0);
    CHECK(r["congruence_rotation"].get<double>() < 1e-12);
}

TEST_CASE("report: schema 1 and 17 significant digits") {
    CHECK(format_double(1.0) == "1.0000000000000000e+00");
    CHECK(std::stod(format_double(0.1)) == 0.1);
    CHECK(std::stod(format_double(-3.601381552)) == -3.601381552);
    RunConfig cfg;
    const std::string text = solve_report(cfg);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["schema"] == 1);
    CHECK(j["solution"]["delta"].get<double>() == doctest::Approx(1.897366596).epsilon(1e-8));
    // every float literal carries 17 significant digits
    const std::regex num(R"([-+]?\d+\.\d+(e[-+]\d+)?)");
    int n = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it, ++n) {
        const std::string s = it->str();
        CHECK_MESSAGE(std::regex_match(s, std::regex(R"([-+]?\d\.\d{16}e[-+]\d{2,3})")), s);
    }
    CHECK(n > 5);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.nu = 4;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.lambda = -1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.steps_per_period = 15;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.json_report = "";
    cfg.out_dir = "/tmp/x";
    CHECK(cfg.report_path() == "/tmp/x/report.json");
    CHECK(parse_mode("fourier") == Mode::fourier);
    CHECK_THROWS_AS(parse_mode("elliptic"), Error);
}
