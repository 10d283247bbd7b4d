#include "bonnet/discrete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "bonnet/errors.hpp"

namespace bonnet {

Quat cross_ratio(const Vec3& f, const Vec3& f1, const Vec3& f12, const Vec3& f2) {
    const Vec3 a = f - f1, b = f1 - f12, c = f12 - f2, d = f2 - f;
    const double tiny = 1e-300;
    if (dot(a, a) <= tiny || dot(b, b) <= tiny || dot(c, c) <= tiny || dot(d, d) <= tiny)
        throw Error(ErrorCode::invalid_argument, "cross ratio of coincident vertices");
    return Quat(a) * Quat(b).inv() * Quat(c) * Quat(d).inv();
}

Quat quad_cross_ratio(const DiscreteNet& net, int i, int j) {
    return cross_ratio(net.at(i, j), net.at(i + 1, j), net.at(i + 1, j + 1), net.at(i, j + 1));
}

double max_cross_ratio_defect(const DiscreteNet& net) {
    double m = 0;
    for (int i = 0; i < net.quads_u(); ++i)
        for (int j = 0; j < net.quads_v(); ++j) m = std::max(m, (quad_cross_ratio(net, i, j) + Quat(1.0)).norm());
    return m;
}

Vec3 dual_edge(const Vec3& e, int direction) {
    const double n2 = dot(e, e);
    if (n2 == 0) throw Error(ErrorCode::invalid_argument, "dual of a vanishing edge");
    return direction == 0 ? e / n2 : -e / n2;
}

namespace {

template <class EdgeFn>
void integrate_net(const DiscreteNet& net, EdgeFn edge, DiscreteNet& out, double& quad_residual,
                   std::array<Vec3, 2>& gap) {
    out.n = net.n;
    out.m = net.m;
    out.periodic = net.periodic;
    out.vertices.assign(net.vertices.size(), Vec3());
    for (int i = 1; i < net.n; ++i) out.at(i, 0) = out.at(i - 1, 0) + edge(i - 1, 0, 0);
    for (int i = 0; i < net.n; ++i)
        for (int j = 1; j < net.m; ++j) out.at(i, j) = out.at(i, j - 1) + edge(i, j - 1, 1);
    quad_residual = 0;
    for (int i = 0; i < net.quads_u(); ++i)
        for (int j = 0; j < net.quads_v(); ++j) {
            const Vec3 d = edge(i, j, 0) + edge(i + 1, j, 1) - edge(i, j + 1, 0) - edge(i, j, 1);
            quad_residual = std::max(quad_residual, norm(d));
        }
    gap = {Vec3(), Vec3()};
    if (net.periodic[0])
        for (int i = 0; i < net.n; ++i) gap[0] += edge(i, 0, 0);
    if (net.periodic[1])
        for (int j = 0; j < net.m; ++j) gap[1] += edge(0, j, 1);
}

Vec3 endpoint(const DiscreteNet& net, int i, int j, int dir) {
    return dir == 0 ? net.at(i + 1, j) : net.at(i, j + 1);
}

}  // namespace

DualResult dual_net(const DiscreteNet& net, double tol) {
    DualResult r;
    auto edge = [&](int i, int j, int dir) { return dual_edge(endpoint(net, i, j, dir) - net.at(i, j), dir); };
    integrate_net(net, edge, r.net, r.quad_residual, r.gap);
    if (r.quad_residual > tol) throw Error(ErrorCode::quad_incompatible, "dual quads do not close");
    return r;
}

Vec3 pair_edge(const Vec3& f, const Vec3& f1, int direction, double eps, double sign) {
    const Vec3 ds = dual_edge(f1 - f, direction);
    return ((Quat(sign * eps) - Quat(f)) * Quat(ds) * (Quat(sign * eps) + Quat(f1))).vec();
}

DiscretePair discrete_pair(const DiscreteNet& net, double eps, double tol) {
    DiscretePair r;
    double qp = 0, qm = 0;
    auto ep = [&](int i, int j, int dir) { return pair_edge(net.at(i, j), endpoint(net, i, j, dir), dir, eps, 1.0); };
    auto em = [&](int i, int j, int dir) { return pair_edge(net.at(i, j), endpoint(net, i, j, dir), dir, eps, -1.0); };
    integrate_net(net, ep, r.plus, qp, r.gap_plus);
    integrate_net(net, em, r.minus, qm, r.gap_minus);
    r.quad_residual = std::max(qp, qm);
    if (r.quad_residual > tol) throw Error(ErrorCode::quad_incompatible, "pair increments do not close around a quad");
    return r;
}

double pair_quad_defect(const DiscreteNet& net, int i, int j, double eps) {
    double m = 0;
    for (double sg : {1.0, -1.0}) {
        auto e = [&](int a, int b, int dir) { return pair_edge(net.at(a, b), endpoint(net, a, b, dir), dir, eps, sg); };
        m = std::max(m, norm(e(i, j, 0) + e(i + 1, j, 1) - e(i, j + 1, 0) - e(i, j, 1)));
    }
    return m;
}

std::vector<double> torus_residuals(const DiscreteNet& net, const OptimizeOptions& opt) {
    std::vector<double> r;
    r.reserve(4 * net.quads_u() * net.quads_v() + 12);
    for (int i = 0; i < net.quads_u(); ++i)
        for (int j = 0; j < net.quads_v(); ++j) {
            const Quat q = quad_cross_ratio(net, i, j) + Quat(1.0);
            for (double c : {q.w, q.x, q.y, q.z}) r.push_back(opt.weight_cross_ratio * c);
        }
    for (double sg : {1.0, -1.0}) {
        for (int dir = 0; dir < 2; ++dir) {
            if (!net.periodic[dir]) continue;
            Vec3 g;
            const int len = dir == 0 ? net.n : net.m;
            for (int t = 0; t < len; ++t) {
                const int i = dir == 0 ? t : 0, j = dir == 0 ? 0 : t;
                g += pair_edge(net.at(i, j), endpoint(net, i, j, dir), dir, opt.eps, sg);
            }
            for (int c = 0; c < 3; ++c) r.push_back(opt.weight_closure * g[c]);
        }
    }
    return r;
}

namespace {

// free coordinates: everything except f(0,0), y and z of f(1,0), z of f(0,1)
struct Layout {
    std::vector<int> free;  // flat coordinate indices 3 * vertex + c
    explicit Layout(const DiscreteNet& net) {
        const int v10 = net.idx(1, 0), v01 = net.idx(0, 1);
        for (int v = 0; v < static_cast<int>(net.vertices.size()); ++v)
            for (int c = 0; c < 3; ++c) {
                if (v == 0) continue;
                if (v == v10 && c > 0) continue;
                if (v == v01 && c == 2) continue;
                free.push_back(3 * v + c);
            }
    }
};

void scatter(const Layout& lay, const Eigen::VectorXd& x, DiscreteNet& net) {
    for (size_t k = 0; k < lay.free.size(); ++k) net.vertices[lay.free[k] / 3][lay.free[k] % 3] = x[k];
}

struct TorusFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const Layout* lay;
    DiscreteNet base;
    OptimizeOptions opt;
    int nin, nout;

    int inputs() const { return nin; }
    int values() const { return nout; }
    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
        DiscreteNet net = base;
        scatter(*lay, x, net);
        try {
            const auto r = torus_residuals(net, opt);
            for (int k = 0; k < nout; ++k) fvec[k] = r[k];
        } catch (const Error&) {
            return -1;
        }
        return 0;
    }
};

}  // namespace

OptimizeResult optimize_torus(const DiscreteNet& seed, const OptimizeOptions& opt, double stall_threshold) {
    if (seed.n < 3 || seed.m < 3) throw Error(ErrorCode::invalid_argument, "optimize_torus needs n, m >= 3");
    if (static_cast<int>(seed.vertices.size()) != seed.n * seed.m)
        throw Error(ErrorCode::grid_mismatch, "vertex count does not match n * m");
    const Layout lay(seed);
    TorusFunctor fun{&lay, seed, opt, static_cast<int>(lay.free.size()),
                     static_cast<int>(torus_residuals(seed, opt).size())};
    Eigen::VectorXd x(fun.nin);
    for (size_t k = 0; k < lay.free.size(); ++k) x[k] = seed.vertices[lay.free[k] / 3][lay.free[k] % 3];

    OptimizeResult res;
    // step ~ eps^(1/3) balances truncation and roundoff of the central difference
    Eigen::NumericalDiff<TorusFunctor, Eigen::Central> nd(fun, 4e-11);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<TorusFunctor, Eigen::Central>> lm(nd);
    lm.parameters.ftol = 1e-16;
    lm.parameters.xtol = 1e-16;
    lm.parameters.gtol = 0;
    // the central difference Jacobian counts 2 n evaluations
    lm.parameters.maxfev = opt.max_iterations * (2 * fun.nin + 4);
    auto status = lm.minimizeInit(x);
    res.initial_residual = lm.fnorm;
    res.history.push_back(lm.fnorm);
    int it = 0;
    if (lm.fnorm > opt.target) {
        while (it < opt.max_iterations) {
            status = lm.minimizeOneStep(x);
            ++it;
            res.history.push_back(lm.fnorm);
            if (lm.fnorm <= opt.target) break;
            if (status != Eigen::LevenbergMarquardtSpace::Running) break;
        }
    }
    res.iterations = it;
    res.net = seed;
    scatter(lay, x, res.net);
    res.residual = lm.fnorm;
    res.converged = res.residual <= opt.target;
    for (size_t v = 0; v < seed.vertices.size(); ++v)
        res.max_displacement = std::max(res.max_displacement, norm(res.net.vertices[v] - seed.vertices[v]));
    if (!res.converged && res.residual > stall_threshold)
        throw Error(ErrorCode::stalled_optimization, "torus optimization stalled above the threshold");
    return res;
}

DiscreteNet read_net_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
        DiscreteNet net;
        net.n = j.at("n").get<int>();
        net.m = j.at("m").get<int>();
        const auto& p = j.at("periodic");
        net.periodic = {p.at(0).get<bool>(), p.at(1).get<bool>()};
        for (const auto& v : j.at("vertices")) net.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()});
        if (net.n < 1 || net.m < 1 || static_cast<int>(net.vertices.size()) != net.n * net.m)
            throw Error(ErrorCode::grid_mismatch, "net JSON: vertex count does not match n * m");
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::io_failure, std::string("net JSON: ") + e.what());
    }
}

void write_net_json(const DiscreteNet& net, const std::string& path) {
    nlohmann::json j;
    j["n"] = net.n;
    j["m"] = net.m;
    j["periodic"] = {net.periodic[0], net.periodic[1]};
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : net.vertices) vs.push_back({v.x, v.y, v.z});
    j["vertices"] = vs;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path);
    out.precision(17);
    out << j.dump() << '\n';
    if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path);
}

}  // namespace bonnet
