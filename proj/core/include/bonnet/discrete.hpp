#pragma once

// Discrete isothermic nets, their duals, discrete Bonnet pairs and a
// least squares torus optimizer.

#include <array>
#include <string>
#include <vector>

#include "bonnet/quat.hpp"

namespace bonnet {

// Vertices f(i, j), 0 <= i < n along the first lattice direction, 0 <= j < m
// along the second, stored row-major (index i * m + j).
struct DiscreteNet {
    int n = 0, m = 0;
    std::array<bool, 2> periodic{false, false};
    std::vector<Vec3> vertices;

    Vec3& at(int i, int j) { return vertices[idx(i, j)]; }
    const Vec3& at(int i, int j) const { return vertices[idx(i, j)]; }
    int idx(int i, int j) const { return ((i % n + n) % n) * m + ((j % m + m) % m); }
    int quads_u() const { return periodic[0] ? n : n - 1; }
    int quads_v() const { return periodic[1] ? m : m - 1; }
};

// (f - f1)(f1 - f12)^{-1}(f12 - f2)(f2 - f)^{-1}; equal to -1 on isothermic quads.
Quat cross_ratio(const Vec3& f, const Vec3& f1, const Vec3& f12, const Vec3& f2);

// Cross ratio of quad (i, j) with corners (i, j), (i+1, j), (i+1, j+1), (i, j+1).
Quat quad_cross_ratio(const DiscreteNet& net, int i, int j);
double max_cross_ratio_defect(const DiscreteNet& net);  // max |cr + 1|

// Dual edges: first direction x / |x|^2, second direction -x / |x|^2.
Vec3 dual_edge(const Vec3& e, int direction);

struct DualResult {
    DiscreteNet net;
    double quad_residual = 0;      // max closure defect of a dual quad
    std::array<Vec3, 2> gap;       // periods along the two generating cycles
};

// Throws quad_incompatible when a dual quad fails to close by more than tol.
DualResult dual_net(const DiscreteNet& net, double tol = 1e-8);

struct DiscretePair {
    DiscreteNet plus, minus;
    double quad_residual = 0;
    std::array<Vec3, 2> gap_plus, gap_minus;
};

// Edge increments Im((+-eps - f)(f1* - f*)(+-eps + f1)), integrated from f(0, 0) = 0.
Vec3 pair_edge(const Vec3& f, const Vec3& f1, int direction, double eps, double sign);
DiscretePair discrete_pair(const DiscreteNet& net, double eps, double tol = 1e-8);

// Defect of the closing condition of the pair increments around quad (i, j).
double pair_quad_defect(const DiscreteNet& net, int i, int j, double eps);

struct OptimizeOptions {
    double eps = 1.0;
    double weight_cross_ratio = 1.0;
    double weight_closure = 1.0;
    int max_iterations = 400;
    double target = 1e-10;
};

struct OptimizeResult {
    DiscreteNet net;
    double residual = 0;          // Euclidean norm of the stacked residual
    double initial_residual = 0;
    double max_displacement = 0;  // max vertex motion
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // residual norm after each accepted step
};

// Residual vector: 4 components of (cr + 1) per quad, then the generating
// cycle gaps of f+ and f-.
std::vector<double> torus_residuals(const DiscreteNet& net, const OptimizeOptions& opt);

// Levenberg-Marquardt over all vertex coordinates, with f(0,0), two coordinates of
// f(1,0) and one of f(0,1) pinned. Throws stalled_optimization when the residual
// plateaus above stall_threshold.
OptimizeResult optimize_torus(const DiscreteNet& seed, const OptimizeOptions& opt = {},
                              double stall_threshold = 1e300);

DiscreteNet read_net_json(const std::string& path);
void write_net_json(const DiscreteNet& net, const std::string& path);

}  // namespace bonnet
