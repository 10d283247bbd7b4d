#include "bonnet/bonnet_pair.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"
#include "bonnet/numerics.hpp"

namespace bonnet {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);
constexpr double max_panel = 0.1;
}  // namespace

BonnetAssembly::BonnetAssembly(const IsothermicSurface& surf, double eps, double u_base) : surf_(&surf), eps_(eps) {
    const auto& fam = surf.family();
    const auto& lame = fam.lame();
    const auto& L = lame.lattice();
    const double om = fam.omega(), R = fam.R();
    coef_bhat_ = (R * R * L.theta1(2 * om) / lame.theta1p0()).real();
    t2pp_over_t2_ = (lame.theta2pp_omega() / lame.theta2_omega()).real();
    coef_bt_ = 2.0 * lame.theta2_omega() / lame.theta1p0();
    const auto& fc = surf.frame();
    c0_ = bhat_raw(u_base, fc.reparam().eval(0.0).w);

    const int n = fc.steps();
    const double h = fc.step();
    bt_nodes_.assign(n + 1, Vec3());
    dbt_nodes_.assign(n + 1, Vec3());
    Vec3 g0 = btilde_prime(0.0);
    dbt_nodes_[0] = g0;
    for (int i = 0; i < n; ++i) {
        const double v = i * h;
        const Vec3 gm = btilde_prime(v + h / 2), g1 = btilde_prime(v + h);
        bt_nodes_[i + 1] = bt_nodes_[i] + (g0 + gm * 4.0 + g1) * (h / 6);
        dbt_nodes_[i + 1] = g1;
        g0 = g1;
    }
}

double BonnetAssembly::bhat_raw(double u, double w) const {
    const auto& fam = surf_->family();
    const auto& L = fam.lame().lattice();
    const cplx zeta = (cplx(u, w) - fam.omega()) / 2.0;
    if (L.lattice_distance(zeta - pi / 2) < 1e-6) throw Error(ErrorCode::pole_proximity, "B-hat evaluated at a zero of theta_2");
    const cplx ld = L.theta2(zeta, 1) / L.theta2(zeta);
    return coef_bhat_ * (t2pp_over_t2_ * w / 2 - ld.imag());
}

double BonnetAssembly::bhat_u(double u, double w) const {
    const auto& fam = surf_->family();
    return (fam.gamma(u, w) / fam.gamma_u(u, w)).imag();
}

cplx BonnetAssembly::btilde_small(double w) const {
    const auto& fam = surf_->family();
    const auto& L = fam.lame().lattice();
    const double om = fam.omega();
    const cplx iw(0, w), iw2(0, w / 2);
    const cplx t2h = L.theta2(iw2);
    const cplx ld = L.theta2(iw2, 1) / t2h;
    const cplx t1 = L.theta1(iw2 - om);
    return coef_bt_ * L.theta2(iw - om) / L.theta1(iw) * (t2pp_over_t2_ * w / 2 - ld.imag()) - I * t1 * t1 / (t2h * t2h);
}

Vec3 BonnetAssembly::btilde_prime(double v) const {
    const auto& fc = surf_->frame();
    const ReparamSample s = fc.reparam().eval(v);
    return frame_apply(fc.phi(v), complex_k(btilde_small(s.w))) * (s.c * surf_->family().R());
}

Vec3 BonnetAssembly::btilde_raw(double v) const {
    const auto& fc = surf_->frame();
    const double T = fc.span(), h = fc.step();
    double n = std::floor(v / T);
    double r = v - n * T;
    int i = static_cast<int>(r / h);
    const int last = fc.steps() - 1;
    i = std::clamp(i, 0, last);
    const double t = (r - i * h) / h;
    const Vec3 &a = bt_nodes_[i], &b = bt_nodes_[i + 1], &da = dbt_nodes_[i], &db = dbt_nodes_[i + 1];
    Vec3 out(hermite(t, a.x, b.x, da.x, db.x, h), hermite(t, a.y, b.y, da.y, db.y, h),
             hermite(t, a.z, b.z, da.z, db.z, h));
    const Quat M = fc.node(fc.steps());
    const Vec3 BT = bt_nodes_.back();
    const int ni = static_cast<int>(n);
    for (int k = 0; k < ni; ++k) out = BT + frame_apply(M, out);
    for (int k = 0; k > ni; --k) out = frame_apply(M.conj(), out - BT);
    return out;
}

Vec3 BonnetAssembly::btilde(double v) const {
    return btilde_raw(v) + frame_apply(surf_->frame().phi(v), Quat::i()) * c0_;
}

BonnetAssembly::Line BonnetAssembly::line(double v) const { return {surf_->slice(v), btilde_raw(v)}; }

PairPoint BonnetAssembly::eval(double u, const VSlice& s, const Vec3& bt_raw) const {
    const auto& fam = surf_->family();
    const double om = fam.omega(), R = fam.R();
    const Vec3 a = frame_apply(s.phi, complex_j(fam.gamma(pi - 2 * om + u, s.r.w)));
    const Vec3 b = frame_apply(s.phi, complex_j(fam.gamma(pi - u, s.r.w)));
    const Vec3 base = a * (R * R) - b * (eps_ * eps_);
    const Vec3 bq = (frame_apply(s.phi, Quat::i()) * bhat_raw(u, s.r.w) + bt_raw) * (2 * eps_);
    return {base + bq, base - bq};
}

PairPoint BonnetAssembly::eval(double u, double v) const { return eval(u, line(v)); }

namespace {

Vec3 integrate_u(const OneForm& alpha, const VSlice& s, double a, double b) {
    Vec3 acc;
    if (a == b) return acc;
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        for (const auto& nd : gauss_legendre_20(a + p * h, a + (p + 1) * h)) acc += alpha(nd.x, s).first * nd.w;
    return acc;
}

Vec3 integrate_v(const IsothermicSurface& surf, const OneForm& alpha, double u, double a, double b) {
    Vec3 acc;
    if (a == b) return acc;
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        for (const auto& nd : gauss_legendre_20(a + p * h, a + (p + 1) * h))
            acc += alpha(u, surf.slice(nd.x)).second * nd.w;
    return acc;
}

}  // namespace

std::vector<Vec3> integrate_one_form(const IsothermicSurface& surf, const OneForm& alpha,
                                     const std::vector<double>& us, const std::vector<double>& vs) {
    if (!std::is_sorted(us.begin(), us.end()) || !std::is_sorted(vs.begin(), vs.end()))
        throw Error(ErrorCode::invalid_argument, "integrate_one_form: sample coordinates must be ascending");
    std::vector<Vec3> out(us.size() * vs.size());
    Vec3 along_v;
    double vprev = 0;
    for (size_t j = 0; j < vs.size(); ++j) {
        along_v += integrate_v(surf, alpha, 0.0, vprev, vs[j]);
        vprev = vs[j];
        const VSlice s = surf.slice(vs[j]);
        Vec3 acc = along_v;
        double uprev = 0;
        for (size_t i = 0; i < us.size(); ++i) {
            acc += integrate_u(alpha, s, uprev, us[i]);
            uprev = us[i];
            out[i * vs.size() + j] = acc;
        }
    }
    return out;
}

Vec3 loop_integral(const IsothermicSurface& surf, const OneForm& alpha, double u0, double u1, double v0, double v1) {
    const VSlice s0 = surf.slice(v0), s1 = surf.slice(v1);
    return integrate_u(alpha, s0, u0, u1) + integrate_v(surf, alpha, u1, v0, v1) + integrate_u(alpha, s1, u1, u0) +
           integrate_v(surf, alpha, u0, v1, v0);
}

OneForm dual_form(const IsothermicSurface& surf) {
    return [&surf](double u, const VSlice& s) {
        const Vec3 fu = surf.f_u(u, s), fv = surf.f_v(u, s);
        return std::make_pair(fu / dot(fu, fu), -fv / dot(fv, fv));
    };
}

OneForm kpp_form(const IsothermicSurface& surf, double eps, double sign, double scale) {
    return [&surf, eps, sign, scale](double u, const VSlice& s) {
        const Vec3 f = surf.f(u, s) * scale;
        const Vec3 fu = surf.f_u(u, s) * scale, fv = surf.f_v(u, s) * scale;
        const Vec3 du = fu / dot(fu, fu), dv = -fv / dot(fv, fv);
        const Quat a = Quat(sign * eps) - Quat(f), b = Quat(sign * eps) + Quat(f);
        return std::make_pair((a * Quat(du) * b).vec(), (a * Quat(dv) * b).vec());
    };
}

KppResult kpp_quadrature(const IsothermicSurface& surf, double eps, const std::vector<double>& us,
                         const std::vector<double>& vs, double scale, double loop_tol) {
    KppResult r;
    const OneForm fp = kpp_form(surf, eps, 1.0, scale), fm = kpp_form(surf, eps, -1.0, scale);
    r.plus = integrate_one_form(surf, fp, us, vs);
    r.minus = integrate_one_form(surf, fm, us, vs);
    double size = 0;
    for (const auto& p : r.plus) size = std::max(size, norm(p));
    size = std::max(size, 1e-300);
    const double umax = us.empty() ? 1.0 : us.back(), vmax = vs.empty() ? 1.0 : vs.back();
    for (const auto& [a, b] : {std::pair{0.5, 0.5}, std::pair{1.0, 0.3}, std::pair{0.3, 1.0}}) {
        const double u1 = std::max(0.1, a * umax), v1 = std::max(0.1, b * vmax);
        r.loop_residual = std::max({r.loop_residual, norm(loop_integral(surf, fp, 0, u1, 0, v1)) / size,
                                    norm(loop_integral(surf, fm, 0, u1, 0, v1)) / size});
    }
    if (r.loop_residual > loop_tol)
        throw Error(ErrorCode::path_dependence, "KPP one-form is not closed on the sample domain");
    return r;
}

double max_dev_after_translation(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::grid_mismatch, "point sets differ in size");
    Vec3 t;
    for (size_t i = 0; i < a.size(); ++i) t += a[i] - b[i];
    t = t / static_cast<double>(a.size());
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b[i] - t));
    return m;
}

InvolutionResiduals involution_residuals(const IsothermicSurface& surf, int nu, int nv) {
    InvolutionResiduals r;
    const auto& fam = surf.family();
    const double om = fam.omega(), R = fam.R();
    std::vector<double> us(nu), vs(nv);
    for (int i = 0; i < nu; ++i) us[i] = 2 * pi * i / nu;
    for (int j = 0; j < nv; ++j) vs[j] = surf.frame().span() * j / nv;
    const auto fstar = integrate_one_form(surf, dual_form(surf), us, vs);
    std::vector<Vec3> ref(fstar.size());
    for (int j = 0; j < nv; ++j) {
        const VSlice s = surf.slice(vs[j]);
        for (int i = 0; i < nu; ++i) {
            ref[i * nv + j] = -surf.f(pi - us[i], s);
            const Vec3 f = surf.f(us[i], s);
            r.inversion = std::max(r.inversion, norm(f * (R * R / dot(f, f)) - surf.f(2 * om - us[i], s)));
        }
    }
    r.dual = max_dev_after_translation(fstar, ref);
    return r;
}

Procrustes procrustes_rms(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::grid_mismatch, "point sets differ in size");
    const double n = static_cast<double>(a.size());
    Vec3 ca, cb;
    for (size_t i = 0; i < a.size(); ++i) {
        ca += a[i];
        cb += b[i];
    }
    ca = ca / n;
    cb = cb / n;
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < a.size(); ++i) {
        const Vec3 x = b[i] - cb, y = a[i] - ca;
        Eigen::Vector3d ex(x.x, x.y, x.z), ey(y.x, y.y, y.z);
        H += ex * ey.transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d U = svd.matrixU(), V = svd.matrixV();
    const double d = (V * U.transpose()).determinant() > 0 ? 1.0 : -1.0;
    auto rms = [&](double sgn) {
        Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
        D(2, 2) = sgn;
        const Eigen::Matrix3d Rm = V * D * U.transpose();
        double s = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            const Vec3 x = b[i] - cb, y = a[i] - ca;
            const Eigen::Vector3d e = Rm * Eigen::Vector3d(x.x, x.y, x.z) - Eigen::Vector3d(y.x, y.y, y.z);
            s += e.squaredNorm();
        }
        return std::sqrt(s / n);
    };
    // d = +1 means the unconstrained optimum is a rotation
    Procrustes p;
    p.rotation = rms(d);
    p.reflection = rms(-d);
    return p;
}

double diameter(const std::vector<Vec3>& pts) {
    double m = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const Vec3 d = pts[i] - pts[j];
            m = std::max(m, dot(d, d));
        }
    return std::sqrt(m);
}

namespace {

SurfaceForms forms_from(const Vec3& fu, const Vec3& fv, const Vec3& fuu, const Vec3& fuv, const Vec3& fvv) {
    SurfaceForms r;
    const Vec3 n = normalized(cross(fu, fv));
    r.E = dot(fu, fu);
    r.F = dot(fu, fv);
    r.G = dot(fv, fv);
    const double L = dot(fuu, n), M = dot(fuv, n), N = dot(fvv, n);
    r.H = (r.E * N - 2 * r.F * M + r.G * L) / (2 * (r.E * r.G - r.F * r.F));
    r.Q = cplx(L - N, -2 * M) / 4.0;
    return r;
}

}  // namespace

StencilLines stencil_lines(const BonnetAssembly& pair, double v, double h) {
    StencilLines lines;
    for (int m = -2; m <= 2; ++m) lines[m + 2] = pair.line(v + m * h);
    return lines;
}

PairForms pair_forms(const BonnetAssembly& pair, double u, const StencilLines& lines, double h) {
    auto at = [&](int a, int b) { return pair.eval(u + a * h, lines[b + 2]); };
    const PairPoint c = at(0, 0);
    const PairPoint um2 = at(-2, 0), um1 = at(-1, 0), up1 = at(1, 0), up2 = at(2, 0);
    const PairPoint vm2 = at(0, -2), vm1 = at(0, -1), vp1 = at(0, 1), vp2 = at(0, 2);
    const PairPoint a11 = at(1, 1), a1m = at(1, -1), am1 = at(-1, 1), amm = at(-1, -1);
    const PairPoint b11 = at(2, 2), b1m = at(2, -2), bm1 = at(-2, 2), bmm = at(-2, -2);
    auto derivs = [&](auto get) {
        const Vec3 fu = (get(um2) - get(um1) * 8.0 + get(up1) * 8.0 - get(up2)) / (12 * h);
        const Vec3 fv = (get(vm2) - get(vm1) * 8.0 + get(vp1) * 8.0 - get(vp2)) / (12 * h);
        const Vec3 fuu = (-get(up2) + get(up1) * 16.0 - get(c) * 30.0 + get(um1) * 16.0 - get(um2)) / (12 * h * h);
        const Vec3 fvv = (-get(vp2) + get(vp1) * 16.0 - get(c) * 30.0 + get(vm1) * 16.0 - get(vm2)) / (12 * h * h);
        const Vec3 d1 = (get(a11) - get(a1m) - get(am1) + get(amm)) / (4 * h * h);
        const Vec3 d2 = (get(b11) - get(b1m) - get(bm1) + get(bmm)) / (16 * h * h);
        const Vec3 fuv = (d1 * 4.0 - d2) / 3.0;
        return forms_from(fu, fv, fuu, fuv, fvv);
    };
    return {derivs([](const PairPoint& p) { return p.plus; }), derivs([](const PairPoint& p) { return p.minus; })};
}

PairReport verify_pair(const BonnetAssembly& pair, int k, const VerifyOptions& opt) {
    PairReport rep;
    rep.k = k;
    const auto& surf = pair.surface();
    const auto& fc = surf.frame();
    const auto& fam = surf.family();
    const double V = fc.reparam().period(), T = k * V, eps = pair.epsilon();
    if (k < 1 || fc.span() < 2 * T * (1 - 1e-12))
        throw Error(ErrorCode::grid_mismatch, "verify_pair: frame must cover 2k periods");

    // closure, symmetry, congruence
    const int nu = opt.nu_close, nv = opt.nv_close;
    std::vector<Vec3> F0, P0, M0, F1, P1, M1, P2, M2;
    F0.reserve(nu * nv);
    const Quat mono = fc.phi(V);
    for (int j = 0; j < nv; ++j) {
        const double v = T * j / nv;
        const auto l0 = pair.line(v), l1 = pair.line(v + T), l2 = pair.line(v + V);
        for (int i = 0; i < nu; ++i) {
            const double u = 2 * pi * i / nu;
            const PairPoint a = pair.eval(u, l0), b = pair.eval(u, l1), c = pair.eval(u, l2);
            F0.push_back(surf.f(u, l0.s));
            F1.push_back(surf.f(u, l1.s));
            P0.push_back(a.plus);
            M0.push_back(a.minus);
            P1.push_back(b.plus);
            M1.push_back(b.minus);
            P2.push_back(c.plus);
            M2.push_back(c.minus);
        }
    }
    const double dF = diameter(F0), dP = diameter(P0), dM = diameter(M0);
    rep.diameter_plus = dP;
    for (size_t i = 0; i < F0.size(); ++i) {
        rep.closure_f = std::max(rep.closure_f, norm(F1[i] - F0[i]) / dF);
        rep.closure_plus = std::max(rep.closure_plus, norm(P1[i] - P0[i]) / dP);
        rep.closure_minus = std::max(rep.closure_minus, norm(M1[i] - M0[i]) / dM);
    }
    {
        std::vector<Vec3> rp(P0.size()), rm(M0.size());
        for (size_t i = 0; i < P0.size(); ++i) {
            rp[i] = frame_apply(mono, P0[i]);
            rm[i] = frame_apply(mono, M0[i]);
        }
        rep.symmetry_plus = max_dev_after_translation(P2, rp) / dP;
        rep.symmetry_minus = max_dev_after_translation(M2, rm) / dM;
    }
    {
        std::vector<Vec3> flipped(M0.size());
        for (int j = 0; j < nv; ++j)
            for (int i = 0; i < nu; ++i) flipped[j * nu + i] = M0[((nv - j) % nv) * nu + i];
        const Procrustes a = procrustes_rms(P0, M0), b = procrustes_rms(P0, flipped);
        rep.congruence_rotation = std::min(a.rotation, b.rotation) / dP;
        rep.congruence_reflection = std::min(a.reflection, b.reflection) / dP;
    }

    // fundamental forms by finite differences
    const double h = opt.h;
    std::vector<cplx> qdiff;
    qdiff.reserve(static_cast<size_t>(opt.nu_fd) * opt.nv_fd);
    for (int j = 0; j < opt.nv_fd; ++j) {
        const double v = T * (j + 0.5) / opt.nv_fd;
        const StencilLines lines = stencil_lines(pair, v, h);
        for (int i = 0; i < opt.nu_fd; ++i) {
            const double u = 2 * pi * (i + 0.5) / opt.nu_fd;
            const PairForms pf = pair_forms(pair, u, lines, h);
            const SurfaceForms& fp = pf.plus;
            const SurfaceForms& fm = pf.minus;
            const double scale = 0.5 * (fp.E + fp.G);
            rep.isometry = std::max({rep.isometry, std::abs(fp.E - fm.E) / scale, std::abs(fp.F - fm.F) / scale,
                                     std::abs(fp.G - fm.G) / scale});
            rep.conformality = std::max({rep.conformality, std::abs(fp.E - fp.G) / (2 * scale), std::abs(fp.F) / scale,
                                         std::abs(fm.E - fm.G) / (fm.E + fm.G), 2 * std::abs(fm.F) / (fm.E + fm.G)});
            const Vec3 f = surf.f(u, lines[2].s);
            const double expect = (eps * eps + dot(f, f)) / fam.eh(u, lines[2].s.r.w);
            rep.metric_factor = std::max({rep.metric_factor, std::abs(std::sqrt(fp.E) - expect) / expect,
                                          std::abs(std::sqrt(fm.G) - expect) / expect});
            rep.mean_curvature = std::max(rep.mean_curvature, std::abs(fp.H - fm.H));
            rep.hopf_modulus = std::max(rep.hopf_modulus, std::abs(std::abs(fp.Q) - std::abs(fm.Q)));
            qdiff.push_back(fp.Q - fm.Q);
        }
    }
    cplx mean(0, 0);
    for (const cplx& q : qdiff) mean += q;
    mean /= static_cast<double>(qdiff.size());
    rep.hopf_difference = mean;
    for (const cplx& q : qdiff) rep.hopf_variation = std::max(rep.hopf_variation, std::abs(q - mean) / std::abs(mean));
    return rep;
}

}  // namespace bonnet
