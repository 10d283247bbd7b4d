// bonnet_tori: command line front end for the Bonnet torus pipeline.

#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bonnet/errors.hpp"
#include "bonnet/pipeline.hpp"
#include "bonnet/theta.hpp"

using namespace bonnet;

namespace {

struct Common {
    double imtau = 0.3205128205;
    std::string mode = "spherical";
    std::optional<int> symmetry;
    std::optional<double> s1;
    std::vector<double> fourier;
    bool keep_fourier = false;
    double epsilon = 1.0;
    int nu = 64, nv = 64;
    std::string out_dir = ".";
    std::string json_report;
    std::string format = "obj";
    int fd_grid = 128;
    int steps = 4096;
    std::string seed;
    int max_iterations = 400;
};

void add_surface_flags(CLI::App* app, Common& c) {
    app->add_option("--imtau", c.imtau, "Im tau of the rhombic lattice")->capture_default_str();
    app->add_option("--mode", c.mode, "spherical or fourier")->capture_default_str();
    app->add_option("--symmetry", c.symmetry, "fold count k, target angle 2 pi / k (default 3 spherical, 2 fourier)");
    app->add_option("--s1", c.s1, "fixed sphere parameter s1 (defaults known for k = 3, 4)");
    app->add_option("--fourier", c.fourier, "coefficients A B C of the Fourier reparametrization")->expected(3);
    app->add_flag("--keep-fourier", c.keep_fourier, "use the Fourier coefficients as given, no closing solve");
    app->add_option("--steps", c.steps, "frame integration steps per period")->capture_default_str();
}

void add_output_flags(CLI::App* app, Common& c) {
    app->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
    app->add_option("--json-report", c.json_report, "report path (default out-dir/report.json)");
    app->add_option("--format", c.format, "mesh format, obj or ply")->capture_default_str();
}

RunConfig make_config(const Common& c) {
    RunConfig cfg;
    cfg.lambda = c.imtau;
    cfg.mode = parse_mode(c.mode);
    if (cfg.mode == Mode::discrete) throw Error(ErrorCode::invalid_argument, "use the discrete verb");
    cfg.symmetry = c.symmetry.value_or(cfg.mode == Mode::fourier ? 2 : 3);
    if (c.s1) {
        cfg.s1 = *c.s1;
    } else if (cfg.mode == Mode::spherical) {
        if (cfg.symmetry == 3) cfg.s1 = -3.601381552;
        else if (cfg.symmetry == 4) cfg.s1 = -3.13060628;
        else throw Error(ErrorCode::invalid_argument, "--s1 is required for this symmetry");
    }
    if (!c.fourier.empty()) cfg.fourier = c.fourier;
    cfg.solve_fourier = !c.keep_fourier;
    cfg.epsilon = c.epsilon;
    cfg.nu = c.nu;
    cfg.nv = c.nv;
    cfg.out_dir = c.out_dir;
    cfg.json_report = c.json_report;
    if (c.format != "obj" && c.format != "ply") throw Error(ErrorCode::invalid_argument, "format must be obj or ply");
    cfg.format = c.format == "ply" ? MeshFormat::ply : MeshFormat::obj;
    cfg.verify.nu_fd = cfg.verify.nv_fd = c.fd_grid;
    cfg.steps_per_period = c.steps;
    cfg.seed_net = c.seed;
    cfg.max_iterations = c.max_iterations;
    return cfg;
}

struct ThetaQuery {
    double imtau = 0.3205128205;
    int kind = 2;
    double re = 0, im = 0;
    int deriv = 0;
    bool lambda0 = false, omega = false;
};

std::string theta_report(const ThetaQuery& q) {
    std::string out = "{\n  \"schema\": 1";
    auto field = [&](const std::string& k, const std::string& v) { out += ",\n  \"" + k + "\": " + v; };
    if (q.lambda0) {
        field("lambda0", format_double(lambda0()));
    } else {
        const RhombicLattice lat(q.imtau);
        field("lambda", format_double(lat.lambda()));
        field("terms", std::to_string(lat.terms()));
        if (q.omega) {
            field("omega", format_double(critical_omega(lat).omega));
        } else {
            if (q.kind != 1 && q.kind != 2) throw Error(ErrorCode::invalid_argument, "kind must be 1 or 2");
            if (q.deriv < 0 || q.deriv > 3) throw Error(ErrorCode::invalid_argument, "deriv must be 0..3");
            const cplx v = lat.theta(q.kind, cplx(q.re, q.im), q.deriv);
            field("kind", std::to_string(q.kind));
            field("deriv", std::to_string(q.deriv));
            field("z", "[" + format_double(q.re) + ", " + format_double(q.im) + "]");
            field("value", "[" + format_double(v.real()) + ", " + format_double(v.imag()) + "]");
        }
    }
    return out + "\n}\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact Bonnet pairs from isothermic tori with planar curvature lines"};
    app.require_subcommand(1);
    Common c;

    auto* gen = app.add_subcommand("gen", "solve, build the pair, verify and write meshes and report");
    add_surface_flags(gen, c);
    add_output_flags(gen, c);
    gen->add_option("--epsilon", c.epsilon, "pair parameter epsilon")->capture_default_str();
    gen->add_option("--nu", c.nu, "mesh samples in u")->capture_default_str();
    gen->add_option("--nv", c.nv, "mesh samples in v")->capture_default_str();
    gen->add_option("--fd-grid", c.fd_grid, "verification grid for curvature checks")->capture_default_str();

    auto* solve = app.add_subcommand("solve", "closing parameters only");
    add_surface_flags(solve, c);
    solve->add_option("--json-report", c.json_report, "also write the report here");

    std::string verify_dir = ".", verify_format = "obj", verify_report;
    auto* verify = app.add_subcommand("verify", "re-check exported pair meshes");
    verify->add_option("--out-dir", verify_dir, "directory holding the meshes")->capture_default_str();
    verify->add_option("--format", verify_format, "obj or ply")->capture_default_str();
    verify->add_option("--json-report", verify_report, "also write the report here");

    auto* disc = app.add_subcommand("discrete", "close a coarse discrete isothermic torus");
    disc->add_option("--imtau", c.imtau, "Im tau for the sampled seed")->capture_default_str();
    disc->add_option("--symmetry", c.symmetry, "fold count of the sampled seed");
    disc->add_option("--s1", c.s1, "s1 of the sampled seed");
    disc->add_option("--epsilon", c.epsilon, "pair parameter epsilon")->capture_default_str();
    disc->add_option("--nu", c.nu, "net size in u")->capture_default_str();
    disc->add_option("--nv", c.nv, "net size in v")->capture_default_str();
    disc->add_option("--seed", c.seed, "seed net JSON instead of sampling");
    disc->add_option("--max-iterations", c.max_iterations, "optimizer iteration cap")->capture_default_str();
    add_output_flags(disc, c);
    c.nu = 9;
    c.nv = 12;

    ThetaQuery tq;
    auto* theta = app.add_subcommand("theta", "theta function and lattice queries");
    theta->add_option("--imtau", tq.imtau, "Im tau")->capture_default_str();
    theta->add_option("--kind", tq.kind, "1 or 2")->capture_default_str();
    theta->add_option("--re", tq.re, "Re z")->capture_default_str();
    theta->add_option("--im", tq.im, "Im z")->capture_default_str();
    theta->add_option("--deriv", tq.deriv, "derivative order 0..3")->capture_default_str();
    theta->add_flag("--omega", tq.omega, "critical omega of the lattice");
    theta->add_flag("--lambda0", tq.lambda0, "the limiting modulus lambda0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ErrorCode::invalid_argument);
    }

    try {
        if (*gen) {
            // gen and discrete default to different grids
            if (gen->count("--nu") == 0) c.nu = 64;
            if (gen->count("--nv") == 0) c.nv = 64;
            std::cout << run_pipeline(make_config(c));
        } else if (*solve) {
            const std::string text = solve_report(make_config(c));
            if (!c.json_report.empty()) write_text(c.json_report, text);
            std::cout << text;
        } else if (*verify) {
            if (verify_format != "obj" && verify_format != "ply")
                throw Error(ErrorCode::invalid_argument, "format must be obj or ply");
            const std::string text =
                verify_meshes(verify_dir, verify_format == "ply" ? MeshFormat::ply : MeshFormat::obj);
            if (!verify_report.empty()) write_text(verify_report, text);
            std::cout << text;
        } else if (*disc) {
            Common d = c;
            d.mode = "spherical";
            RunConfig cfg = make_config(d);
            cfg.mode = Mode::discrete;
            std::cout << run_discrete(cfg);
        } else if (*theta) {
            std::cout << theta_report(tq);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
