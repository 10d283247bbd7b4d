#include "bonnet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <json.hpp>

#include "bonnet/discrete.hpp"
#include "bonnet/errors.hpp"
#include "bonnet/periodicity.hpp"
#include "bonnet/spherical.hpp"
#include "bonnet/theta.hpp"

namespace bonnet {

using json = nlohmann::ordered_json;
constexpr double pi = std::numbers::pi;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

// nlohmann prints the shortest round-trip form; reports want a fixed 17 digits.
void dump17(const json& j, std::string& out, int level) {
    const std::string pad(2 * (level + 1), ' '), close(2 * level, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                dump17(it.value(), out, level + 1);
            }
            out += "\n" + close + "}";
            return;
        }
        case json::value_t::array: {
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",";
                first = false;
                if (!flat) out += "\n" + pad;
                dump17(e, out, level + 1);
            }
            if (!flat && !j.empty()) out += "\n" + close;
            out += "]";
            return;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

std::string to_text(const json& j) {
    std::string out;
    dump17(j, out, 0);
    out += "\n";
    return out;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

// Keeps everything that the surface evaluators point into alive.
struct Solved {
    std::unique_ptr<PlanarFamily> fam;
    std::shared_ptr<const Reparam> rep;
    int k = 0;
    json solution;
};

json lattice_json(const LameData& L) {
    json j;
    j["lambda"] = L.lattice().lambda();
    j["omega"] = L.omega();
    j["nome_terms"] = L.lattice().terms();
    j["R"] = L.R();
    j["s0"] = L.s0();
    j["U_omega"] = L.U_omega();
    j["Up_omega"] = L.Up_omega();
    j["U1p_omega"] = L.U1p_omega();
    j["U2_omega"] = L.U2_at_omega();
    return j;
}

Solved solve(const RunConfig& cfg) {
    cfg.validate();
    Solved s;
    LameData lame(cfg.lambda);
    s.fam = std::make_unique<PlanarFamily>(lame);
    const LameData& L = s.fam->lame();
    s.k = cfg.symmetry;
    const double target = 2 * pi / s.k;
    json& j = s.solution;
    j["mode"] = mode_name(cfg.mode == Mode::fourier ? Mode::fourier : Mode::spherical);
    j["symmetry"] = s.k;
    j["theta_target"] = target;
    j["lattice"] = lattice_json(L);
    if (cfg.mode == Mode::fourier) {
        std::vector<double> coeffs = cfg.fourier;
        j["coeffs_initial"] = coeffs;
        if (cfg.solve_fourier) {
            const FourierSolveResult fr =
                solve_fourier_family(*s.fam, fourier_abc_basis(), coeffs, 2 * pi, target, {0, 1}, 30, 1e-10,
                                     cfg.steps_per_period);
            coeffs = fr.coeffs;
            j["newton_iterations"] = fr.iterations;
        }
        j["coeffs"] = coeffs;
        s.rep = std::make_shared<LinearReparam>(fourier_abc_basis(), coeffs, 2 * pi);
    } else {
        const SphericalSolveResult sr = solve_spherical(L, target, cfg.s1);
        j["delta"] = sr.params.delta;
        j["s1"] = sr.params.s1;
        j["s2"] = sr.params.s2;
        j["theta_integral"] = sr.theta;
        j["bpart_integral"] = sr.bpart;
        j["newton_iterations"] = sr.newton_iterations;
        j["a_seeds"] = sr.seeds;
        j["seed_used"] = sr.seed_used;
        s.rep = std::make_shared<SphericalReparam>(L, sr.params);
    }
    j["period"] = s.rep->period();
    return s;
}

json periodicity_json(const PeriodicityReport& p) {
    json j;
    j["theta"] = p.theta;
    j["axis"] = vec_json(p.axis);
    j["axial"] = p.axial;
    j["k"] = p.k;
    j["period"] = p.period;
    return j;
}

json pair_json(const PairReport& r) {
    json j;
    j["isometry"] = r.isometry;
    j["metric_factor"] = r.metric_factor;
    j["conformality"] = r.conformality;
    j["mean_curvature"] = r.mean_curvature;
    j["hopf_modulus"] = r.hopf_modulus;
    j["hopf_difference"] = cplx_json(r.hopf_difference);
    j["hopf_variation"] = r.hopf_variation;
    j["closure_f"] = r.closure_f;
    j["closure_plus"] = r.closure_plus;
    j["closure_minus"] = r.closure_minus;
    j["symmetry_plus"] = r.symmetry_plus;
    j["symmetry_minus"] = r.symmetry_minus;
    j["congruence_rotation"] = r.congruence_rotation;
    j["congruence_reflection"] = r.congruence_reflection;
    j["diameter_plus"] = r.diameter_plus;
    j["k"] = r.k;
    return j;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["lambda"] = cfg.lambda;
    j["mode"] = mode_name(cfg.mode);
    j["symmetry"] = cfg.symmetry;
    if (cfg.mode == Mode::fourier) j["fourier"] = cfg.fourier;
    else j["s1"] = cfg.s1;
    j["epsilon"] = cfg.epsilon;
    j["nu"] = cfg.nu;
    j["nv"] = cfg.nv;
    j["steps_per_period"] = cfg.steps_per_period;
    return j;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string ext(MeshFormat f) { return f == MeshFormat::ply ? ".ply" : ".obj"; }

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create " + dir + ": " + ec.message());
}

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::spherical: return "spherical";
        case Mode::fourier: return "fourier";
        case Mode::discrete: return "discrete";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "spherical") return Mode::spherical;
    if (s == "fourier") return Mode::fourier;
    if (s == "discrete") return Mode::discrete;
    throw Error(ErrorCode::invalid_argument, "unknown mode " + s);
}

void RunConfig::validate() const {
    if (!(lambda > 0)) throw Error(ErrorCode::invalid_argument, "lambda must be positive");
    if (nu < 8 || nv < 8) throw Error(ErrorCode::invalid_argument, "nu and nv must be at least 8");
    if (symmetry < 1) throw Error(ErrorCode::invalid_argument, "symmetry must be positive");
    if (mode == Mode::fourier && fourier.size() != 3)
        throw Error(ErrorCode::invalid_argument, "fourier mode takes three coefficients A, B, C");
    if (!std::isfinite(epsilon)) throw Error(ErrorCode::invalid_argument, "epsilon must be finite");
    if (steps_per_period < 16 || steps_per_period % 2)
        throw Error(ErrorCode::invalid_argument, "steps_per_period must be even and at least 16");
}

std::string RunConfig::report_path() const { return json_report.empty() ? join(out_dir, "report.json") : json_report; }

std::string solve_report(const RunConfig& cfg) {
    Solved s = solve(cfg);
    json rep;
    rep["schema"] = 1;
    rep["config"] = config_json(cfg);
    rep["solution"] = s.solution;
    return to_text(rep);
}

std::string run_pipeline(const RunConfig& cfg) {
    if (cfg.mode == Mode::discrete) return run_discrete(cfg);
    Solved s = solve(cfg);
    const int k = s.k;
    const PlanarFamily& fam = *s.fam;
    const FrameCurve fc(fam, s.rep, 2 * k, cfg.steps_per_period);
    const IsothermicSurface surf(fam, fc);
    const BonnetAssembly pair(surf, cfg.epsilon);
    const double V = s.rep->period(), T = k * V;

    json rep;
    rep["schema"] = 1;
    rep["config"] = config_json(cfg);
    rep["solution"] = s.solution;
    const PeriodicityReport per = periodicity_report(fam, fc);
    rep["periodicity"] = periodicity_json(per);
    rep["pair"] = pair_json(verify_pair(pair, k, cfg.verify));
    if (cfg.involution_grid > 0) {
        const InvolutionResiduals inv = involution_residuals(surf, cfg.involution_grid, cfg.involution_grid);
        rep["involutions"] = {{"dual", inv.dual}, {"inversion", inv.inversion}};
    }
    if (cfg.oracle_grid > 0) {
        std::vector<double> us, vs;
        for (int i = 0; i < cfg.oracle_grid; ++i) us.push_back(2 * pi * i / cfg.oracle_grid);
        for (int j = 0; j < cfg.oracle_grid; ++j) vs.push_back(T * j / cfg.oracle_grid);
        const KppResult kr = kpp_quadrature(surf, cfg.epsilon, us, vs);
        std::vector<Vec3> P, M;
        for (double u : us)
            for (double v : vs) {
                const PairPoint p = pair.eval(u, v);
                P.push_back(p.plus);
                M.push_back(p.minus);
            }
        rep["oracle"] = {{"plus", max_dev_after_translation(kr.plus, P)},
                         {"minus", max_dev_after_translation(kr.minus, M)},
                         {"loop_residual", kr.loop_residual},
                         {"grid", cfg.oracle_grid}};
    }

    // meshes
    const int nu = cfg.nu, nv = cfg.nv;
    const double h = cfg.verify.h;
    std::vector<Vec3> F(nu * nv), P(nu * nv), M(nu * nv);
    std::vector<double> eh(nu * nv), Hp(nu * nv), Hm(nu * nv);
    for (int j = 0; j < nv; ++j) {
        const double v = T * j / nv;
        const StencilLines lines = stencil_lines(pair, v, h);
        for (int i = 0; i < nu; ++i) {
            const double u = 2 * pi * i / nu;
            const int id = i * nv + j;
            const PairPoint p = pair.eval(u, lines[2]);
            F[id] = surf.f(u, lines[2].s);
            P[id] = p.plus;
            M[id] = p.minus;
            eh[id] = fam.eh(u, lines[2].s.r.w);
            const PairForms pf = pair_forms(pair, u, lines, h);
            Hp[id] = pf.plus.H;
            Hm[id] = pf.minus.H;
        }
    }
    ensure_dir(cfg.out_dir);
    json artifacts = json::array();
    auto emit = [&](const std::string& name, std::vector<Vec3> pts, const std::vector<double>* H, const std::string& what) {
        Mesh m = grid_mesh(nu, nv, true, true, std::move(pts));
        m.comment = what;
        m.scalars["eh"] = eh;
        if (H) m.scalars["H"] = *H;
        const std::string path = join(cfg.out_dir, name + ext(cfg.format));
        export_mesh(m, path, cfg.format);
        artifacts.push_back(path);
    };
    emit("isothermic", std::move(F), nullptr, "isothermic torus");
    emit("bonnet_plus", std::move(P), &Hp, "bonnet pair f+");
    emit("bonnet_minus", std::move(M), &Hm, "bonnet pair f-");
    rep["artifacts"] = artifacts;
    const std::string text = to_text(rep);
    write_text(cfg.report_path(), text);
    return text;
}

DiscreteNet sample_torus_net(const RunConfig& cfg, int n, int m) {
    RunConfig c = cfg;
    c.mode = cfg.mode == Mode::fourier ? Mode::fourier : Mode::spherical;
    Solved s = solve(c);
    const FrameCurve fc(*s.fam, s.rep, s.k, cfg.steps_per_period);
    const IsothermicSurface surf(*s.fam, fc);
    const double T = s.k * s.rep->period();
    DiscreteNet net;
    net.n = n;
    net.m = m;
    net.periodic = {true, true};
    net.vertices.resize(static_cast<size_t>(n) * m);
    for (int j = 0; j < m; ++j) {
        const VSlice sl = surf.slice(T * j / m);
        for (int i = 0; i < n; ++i) net.at(i, j) = surf.f(2 * pi * i / n, sl);
    }
    return net;
}

std::string run_discrete(const RunConfig& cfg) {
    if (cfg.nu < 3 || cfg.nv < 3) throw Error(ErrorCode::invalid_argument, "discrete nets need at least 3 x 3 vertices");
    DiscreteNet seed;
    json rep;
    rep["schema"] = 1;
    json conf;
    conf["mode"] = "discrete";
    conf["epsilon"] = cfg.epsilon;
    conf["max_iterations"] = cfg.max_iterations;
    if (cfg.seed_net.empty()) {
        RunConfig c = cfg;
        c.nu = std::max(cfg.nu, 8);
        c.nv = std::max(cfg.nv, 8);
        seed = sample_torus_net(c, cfg.nu, cfg.nv);
        conf["seed"] = "sampled";
        conf["lambda"] = cfg.lambda;
        conf["symmetry"] = cfg.symmetry;
        conf["s1"] = cfg.s1;
    } else {
        seed = read_net_json(cfg.seed_net);
        conf["seed"] = cfg.seed_net;
    }
    conf["n"] = seed.n;
    conf["m"] = seed.m;
    rep["config"] = conf;

    ensure_dir(cfg.out_dir);
    json artifacts = json::array();
    auto save_net = [&](const DiscreteNet& net, const std::string& name) {
        const std::string path = join(cfg.out_dir, name);
        write_net_json(net, path);
        artifacts.push_back(path);
    };
    auto save_mesh = [&](const DiscreteNet& net, const std::string& name) {
        Mesh mesh = grid_mesh(net.n, net.m, net.periodic[0], net.periodic[1], net.vertices);
        const std::string path = join(cfg.out_dir, name + ext(cfg.format));
        export_mesh(mesh, path, cfg.format);
        artifacts.push_back(path);
    };
    // the seed is written first so a stalled run still leaves it behind
    save_net(seed, "net_seed.json");

    OptimizeOptions opt;
    opt.eps = cfg.epsilon;
    opt.max_iterations = cfg.max_iterations;
    const OptimizeResult r = optimize_torus(seed, opt, cfg.stall_threshold);
    const double diam = diameter(seed.vertices);
    json o;
    o["initial_residual"] = r.initial_residual;
    o["residual"] = r.residual;
    o["iterations"] = r.iterations;
    o["converged"] = r.converged;
    o["seed_cross_ratio_defect"] = max_cross_ratio_defect(seed);
    o["cross_ratio_defect"] = max_cross_ratio_defect(r.net);
    o["max_displacement"] = r.max_displacement;
    o["diameter"] = diam;
    o["relative_displacement"] = r.max_displacement / diam;
    o["history"] = r.history;
    rep["optimization"] = o;

    save_net(r.net, "net_optimized.json");
    save_mesh(r.net, "discrete_isothermic");
    try {
        // the optimized net is only isothermic to the optimizer residual; report the defect
        const DiscretePair dp = discrete_pair(r.net, cfg.epsilon, std::numeric_limits<double>::infinity());
        json d;
        d["quad_residual"] = dp.quad_residual;
        d["gap_plus"] = {vec_json(dp.gap_plus[0]), vec_json(dp.gap_plus[1])};
        d["gap_minus"] = {vec_json(dp.gap_minus[0]), vec_json(dp.gap_minus[1])};
        rep["pair"] = d;
        save_mesh(dp.plus, "discrete_plus");
        save_mesh(dp.minus, "discrete_minus");
    } catch (const Error& e) {
        rep["pair"] = {{"error", error_name(e.code())}, {"message", e.what()}};
    }
    rep["artifacts"] = artifacts;
    const std::string text = to_text(rep);
    write_text(cfg.report_path(), text);
    return text;
}

std::string verify_meshes(const std::string& dir, MeshFormat fmt) {
    const Mesh f = read_mesh(join(dir, "isothermic" + ext(fmt)));
    const Mesh p = read_mesh(join(dir, "bonnet_plus" + ext(fmt)));
    const Mesh m = read_mesh(join(dir, "bonnet_minus" + ext(fmt)));
    for (const Mesh* x : {&p, &m})
        if (x->nu != f.nu || x->nv != f.nv || x->vertices.size() != f.vertices.size() || x->faces != f.faces)
            throw Error(ErrorCode::grid_mismatch, "meshes do not share one grid");
    if (f.nu * f.nv != static_cast<int>(f.vertices.size()))
        throw Error(ErrorCode::grid_mismatch, "grid header does not match the vertex count");
    const int nu = f.nu, nv = f.nv;

    // corresponding edge lengths of f+ and f- (chords of isometric surfaces)
    double edge = 0;
    for (const auto& q : f.faces)
        for (int a = 0; a < 4; ++a) {
            const int i0 = q[a], i1 = q[(a + 1) % 4];
            const double lp = norm(p.vertices[i1] - p.vertices[i0]), lm = norm(m.vertices[i1] - m.vertices[i0]);
            edge = std::max(edge, std::abs(lp - lm) / std::max(lp, lm));
        }
    double dH = 0;
    const auto hp = p.scalars.find("H"), hm = m.scalars.find("H");
    const bool haveH = hp != p.scalars.end() && hm != m.scalars.end();
    if (haveH)
        for (size_t i = 0; i < hp->second.size(); ++i) dH = std::max(dH, std::abs(hp->second[i] - hm->second[i]));

    std::vector<Vec3> flipped(m.vertices.size());
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) flipped[i * nv + j] = m.vertices[i * nv + (nv - j) % nv];
    const Procrustes a = procrustes_rms(p.vertices, m.vertices), b = procrustes_rms(p.vertices, flipped);
    const double dP = diameter(p.vertices);

    json rep;
    rep["schema"] = 1;
    rep["directory"] = dir;
    rep["nu"] = nu;
    rep["nv"] = nv;
    rep["closed"] = {f.closed[0], f.closed[1]};
    rep["faces"] = f.faces.size();
    rep["edge_length_mismatch"] = edge;
    if (haveH) rep["mean_curvature"] = dH;
    rep["congruence_rotation"] = std::min(a.rotation, b.rotation) / dP;
    rep["congruence_reflection"] = std::min(a.reflection, b.reflection) / dP;
    rep["diameter_isothermic"] = diameter(f.vertices);
    rep["diameter_plus"] = dP;
    rep["diameter_minus"] = diameter(m.vertices);
    return to_text(rep);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path);
}

}  // namespace bonnet
