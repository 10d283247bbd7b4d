#pragma once

// Orchestration: parameter solve, sampling, mesh export and JSON reports.
// Reports are returned as JSON text (schema 1, floats with 17 significant digits).

#include <string>
#include <vector>

#include "bonnet/bonnet_pair.hpp"
#include "bonnet/discrete.hpp"
#include "bonnet/mesh_io.hpp"

namespace bonnet {

enum class Mode { spherical, fourier, discrete };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct RunConfig {
    double lambda = 0.3205128205;
    Mode mode = Mode::spherical;
    int symmetry = 3;  // target monodromy angle 2 pi / symmetry (3 and 4 spherical, 2 fourier)
    double s1 = -3.601381552;
    std::vector<double> fourier{1.44531765156, 1.33527652772, 1.05005399924};  // A, B, C
    bool solve_fourier = true;  // adjust A, B so the closing conditions hold
    double epsilon = 1.0;
    int nu = 64, nv = 64;
    std::string out_dir = ".";
    std::string json_report;  // empty: out_dir/report.json
    MeshFormat format = MeshFormat::obj;
    int steps_per_period = 4096;
    VerifyOptions verify{128, 128, 64, 64, 2e-3};
    int oracle_grid = 24;     // 0 skips the path integration oracle
    int involution_grid = 32;

    // Discrete mode
    std::string seed_net;  // empty: sample the smooth torus on nu x nv
    int max_iterations = 400;
    double stall_threshold = 1e-6;  // residual plateau above this is stalled_optimization

    void validate() const;
    std::string report_path() const;
};

// Parameters only. Returns the "solution" report.
std::string solve_report(const RunConfig& cfg);

// Solve, build the pair, verify and write isothermic / bonnet_plus / bonnet_minus
// meshes and the report. Returns the report text.
std::string run_pipeline(const RunConfig& cfg);

// Seeds from cfg (sampled torus or seed_net), runs optimize_torus and writes the
// nets, meshes and report.
std::string run_discrete(const RunConfig& cfg);

// Re-checks exported pair meshes in dir. Throws grid_mismatch on inconsistent meshes.
std::string verify_meshes(const std::string& dir, MeshFormat fmt = MeshFormat::obj);

// Samples the isothermic torus of a solved spherical configuration as a closed n x m net.
DiscreteNet sample_torus_net(const RunConfig& cfg, int n, int m);

std::string format_double(double x);  // 17 significant digits, %.16e

void write_text(const std::string& path, const std::string& text);

}  // namespace bonnet
