#pragma once

#include <functional>
#include <vector>

namespace bonnet {

struct QuadResult {
    double value = 0;
    double error = 0;
    double l1 = 0;
};

// Adaptive Gauss-Kronrod (G15/K31) by bisection down to min(abs_tol, 1e-14 L1), L1 = int |f|.
// Throws Error(quadrature_tolerance) when the estimate stays above
// abs_tol + 64 eps * L1 after subdivision.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12);

// Fixed-order composite Gauss-Legendre, for smooth integrands inside tight loops.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 1);

// Bracketed root (TOMS 748). Throws Error(no_convergence) without a sign change.
double find_root(const std::function<double(double)>& f, double a, double b, double xtol = 1e-14,
                 int max_iter = 200);

// Cubic Hermite interpolation on one cell of width h, t in [0, 1].
double hermite(double t, double y0, double y1, double d0, double d1, double h);

}  // namespace bonnet

namespace bonnet {

struct GLNode {
    double x, w;
};

// 20 point Gauss-Legendre nodes and weights mapped to [a, b].
std::vector<GLNode> gauss_legendre_20(double a, double b);

}  // namespace bonnet
