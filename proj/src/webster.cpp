#include "hermsurf/webster.hpp"

#include "hermsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hermsurf {

namespace {

GridField real_field(const Eigen::VectorXd& v) { return v.cast<cplx>(); }

double max_over(const Eigen::VectorXd& v, const SurfaceDomain& dom, const std::vector<bool>* skip = nullptr) {
    double m = 0.0;
    for (int k = 0; k < dom.size(); ++k) {
        if (!dom.active(k) || (skip && (*skip)[k])) continue;
        m = std::max(m, std::abs(v(k)));
    }
    return m;
}

// Real second fundamental form data at one node.
struct RealFrame {
    Mat4d g;
    Vec4d e[2], n[2];
    double b[2][2][2];  // b[a][i][j] = <B(e_i, e_j), n_a>
    RealRiemann r;
};

RealFrame real_frame(const PullbackJet& jet, const MetricField& metric, int k) {
    const SurfaceSamples& s = jet.samples;
    const ChartPoint& f = s.f[k];
    RealFrame out;
    const RealChristoffel rc = real_christoffel(metric, f);
    out.g = rc.metric;
    out.r = real_riemann(metric, f);
    auto ip = [&](const Vec4d& x, const Vec4d& y) { return x.dot(out.g * y); };

    const Vec4d x[2] = {to_real(s.fw[k] + s.fwb[k]), to_real(kI * (s.fw[k] - s.fwb[k]))};
    const Vec2c fxx = s.fww[k] + 2.0 * s.fwwb[k] + s.fwbwb[k];
    const Vec2c fyy = -s.fww[k] + 2.0 * s.fwwb[k] - s.fwbwb[k];
    const Vec2c fxy = kI * (s.fww[k] - s.fwbwb[k]);
    const Vec2c second[2][2] = {{fxx, fxy}, {fxy, fyy}};
    Vec4d cov[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec4d v = to_real(second[i][j]);
            for (int c = 0; c < 4; ++c) v(c) += x[i].dot(rc.christoffel[c] * x[j]);
            cov[i][j] = v;
        }

    // e_i = Σ m(i, a) x_a by Gram–Schmidt.
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    const double n0 = std::sqrt(ip(x[0], x[0]));
    m(0, 0) = 1.0 / n0;
    out.e[0] = x[0] / n0;
    const double c01 = ip(x[1], out.e[0]);
    Vec4d t = x[1] - c01 * out.e[0];
    const double n1 = std::sqrt(ip(t, t));
    out.e[1] = t / n1;
    m(1, 1) = 1.0 / n1;
    m(1, 0) = -c01 / (n0 * n1);

    auto project = [&](Vec4d v, int count) {
        for (int i = 0; i < 2; ++i) v -= ip(v, out.e[i]) * out.e[i];
        for (int a = 0; a < count; ++a) v -= ip(v, out.n[a]) * out.n[a];
        return v;
    };
    for (int a = 0; a < 2; ++a) {
        Vec4d best = Vec4d::Zero();
        double best_norm = -1;
        for (int c = 0; c < 4; ++c) {
            const Vec4d v = project(Vec4d::Unit(c), a);
            const double nv = ip(v, v);
            if (nv > best_norm) {
                best_norm = nv;
                best = v;
            }
        }
        out.n[a] = best / std::sqrt(best_norm);
    }
    Mat4d frame;
    frame << out.e[0], out.e[1], out.n[0], out.n[1];
    if (frame.determinant() < 0) out.n[1] = -out.n[1];

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec4d bij = Vec4d::Zero();
            for (int a = 0; a < 2; ++a)
                for (int c = 0; c < 2; ++c) bij += m(i, a) * m(j, c) * cov[a][c];
            for (int a = 0; a < 2; ++a) out.b[a][i][j] = ip(bij, out.n[a]);
        }
    return out;
}

// <R(x, y)z, w>
double riemann_form(const RealFrame& rf, const Vec4d& x, const Vec4d& y, const Vec4d& z, const Vec4d& w) {
    Vec4d v = Vec4d::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) v(a) += rf.r.r[a][b][c][d] * z(b) * x(c) * y(d);
    return w.dot(rf.g * v);
}

// Wirtinger derivatives of the a-fields in the local frame, from the
// covariant second-order coefficients.
struct AFieldDerivatives {
    Vec2c a1_w, a1_wb, a1b_w, a1b_wb;
};

AFieldDerivatives a_derivatives(const PullbackJet& jet, int k) {
    const double lam = jet.lambda(k);
    const cplx lw = jet.lambda_w(k) / lam, lwb = jet.lambda_wb(k) / lam;
    const Mat2c ww = jet.connection_on(k, false), wwb = jet.connection_on(k, true);
    const SecondOrder& s = jet.second;
    AFieldDerivatives d;
    d.a1_w = lam * s.a11[k] + lw * jet.a1[k] - ww * jet.a1[k];
    d.a1_wb = lam * s.a11b[k] - lwb * jet.a1[k] - wwb * jet.a1[k];
    d.a1b_w = lam * s.a1b1[k] - lw * jet.a1b[k] - ww * jet.a1b[k];
    d.a1b_wb = lam * s.a1b1b[k] + lwb * jet.a1b[k] - wwb * jet.a1b[k];
    return d;
}

// ∂_X of the row vector v^H / |v| given ∂_X v and ∂_X̄ v.
Eigen::RowVector2cd unit_row_derivative(const Vec2c& v, const Vec2c& dx, const Vec2c& dxbar) {
    const double nv = v.norm();
    const cplx dsq = dxbar.dot(v) + v.dot(dx);  // ∂_X |v|²
    const cplx dn = dsq / (2 * nv);
    return dxbar.adjoint() / nv - v.adjoint() * dn / (nv * nv);
}

std::vector<bool> dilate(const std::vector<bool>& mask, const SurfaceDomain& dom, int cells) {
    std::vector<bool> out = mask;
    const int n = dom.resolution();
    for (int k = 0; k < dom.size(); ++k) {
        if (!mask[k]) continue;
        const Node& nd = dom.node(k);
        for (int dj = -cells; dj <= cells; ++dj)
            for (int di = -cells; di <= cells; ++di) {
                int i = nd.i + di, j = nd.j + dj;
                if (dom.kind() == DomainKind::Torus) {
                    i = (i + n) % n;
                    j = (j + n) % n;
                } else if (i < 0 || j < 0 || i >= n || j >= n) {
                    continue;
                }
                out[dom.index(nd.chart, i, j)] = true;
            }
    }
    return out;
}

}  // namespace

Eigen::VectorXd gauss_curvature(const PullbackJet& jet, const SurfaceDomain& dom) {
    const int n = dom.size();
    GridField rho_w(n), rho_wb(n);
    for (int k = 0; k < n; ++k) {
        if (dom.active(k) && !(jet.lambda(k) >= 1e-10))
            throw Error(ErrorKind::DegenerateConformalFactor, "webster: conformal factor vanishes");
        rho_w(k) = -kI * jet.lambda_w(k) / jet.lambda(k);
        rho_wb(k) = kI * jet.lambda_wb(k) / jet.lambda(k);
    }
    const GridField drho = dom.deriv(rho_wb, Direction::W) - dom.deriv(rho_w, Direction::WBar);
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) {
        const double l2 = jet.lambda(k) * jet.lambda(k);
        out(k) = 2.0 * (kI * drho(k) / l2).real();
    }
    return out;
}

Eigen::VectorXd gauss_curvature_classical(const Eigen::VectorXd& lambda, const SurfaceDomain& dom) {
    const GridField lg = lambda.array().log().matrix().cast<cplx>();
    return -dom.laplacian(lg, lambda).real();
}

Eigen::VectorXd gauss_curvature_extrinsic(const PullbackJet& jet, const MetricField& metric) {
    if (!jet.has_second) throw Error(ErrorKind::DerivativeUnavailable, "webster: second-order jet missing");
    Eigen::VectorXd out(jet.size());
    for (int k = 0; k < jet.size(); ++k) {
        const RealFrame rf = real_frame(jet, metric, k);
        double v = riemann_form(rf, rf.e[0], rf.e[1], rf.e[1], rf.e[0]);
        for (int a = 0; a < 2; ++a) v += rf.b[a][0][0] * rf.b[a][1][1] - rf.b[a][0][1] * rf.b[a][0][1];
        out(k) = v;
    }
    return out;
}

Eigen::VectorXd normal_curvature(const PullbackJet& jet, const MetricField& metric) {
    if (!jet.has_second) throw Error(ErrorKind::DerivativeUnavailable, "webster: second-order jet missing");
    Eigen::VectorXd out(jet.size());
    for (int k = 0; k < jet.size(); ++k) {
        const RealFrame rf = real_frame(jet, metric, k);
        double v = riemann_form(rf, rf.e[0], rf.e[1], rf.n[1], rf.n[0]);
        for (int i = 0; i < 2; ++i) v += rf.b[0][0][i] * rf.b[1][1][i] - rf.b[1][0][i] * rf.b[0][1][i];
        out(k) = v;
    }
    return out;
}

AdaptedFrame adapted_frame(const PullbackJet& jet, const MetricField& metric, int k) {
    AdaptedFrame af;
    const Vec2c& a1 = jet.a1[k];
    const Vec2c& a1b = jet.a1b[k];
    af.c = a1.norm();
    af.s = a1b.norm();
    if (af.c < 1e-12 || af.s < 1e-12)
        throw Error(ErrorKind::AdaptedFrameDegenerate, "webster: adapted frame undefined at a singular point");
    af.u.row(0) = a1.adjoint() / af.c;
    af.u.row(1) = a1b.adjoint() / af.s;

    const AFieldDerivatives d = a_derivatives(jet, k);
    Mat2c du[2];
    du[0].row(0) = unit_row_derivative(a1, d.a1_w, d.a1_wb);
    du[0].row(1) = unit_row_derivative(a1b, d.a1b_w, d.a1b_wb);
    du[1].row(0) = unit_row_derivative(a1, d.a1_wb, d.a1_w);
    du[1].row(1) = unit_row_derivative(a1b, d.a1b_wb, d.a1b_w);

    const LeviCivitaPacket lc = levi_civita(metric, jet.samples.f[k]);
    const Vec4c on[2] = {jet.on_w(k), jet.on_wb(k)};
    const Mat2c uh = af.u.adjoint();
    for (int dir = 0; dir < 2; ++dir) {
        Mat2c phi = Mat2c::Zero(), phibar = Mat2c::Zero();
        for (int b = 0; b < 4; ++b) {
            phi += lc.phi[b] * on[dir](b);
            phibar += lc.phibar[b] * on[dir](b);
        }
        af.phi[dir] = af.u * phi * uh - du[dir] * uh;
        af.phibar[dir] = af.u.conjugate() * phibar * uh;
    }
    return af;
}

AdaptedCurvature normal_curvature_adapted(const PullbackJet& jet, const MetricField& metric,
                                          const SurfaceDomain& dom, const std::vector<bool>& excised) {
    if (!jet.has_second) throw Error(ErrorKind::DerivativeUnavailable, "webster: second-order jet missing");
    const int n = dom.size();
    AdaptedCurvature out;
    out.mask = dilate(excised, dom, 2);
    out.k_perp = Eigen::VectorXd::Zero(n);
    out.k_structure = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd kg = gauss_curvature(jet, dom);

    GridField rp_w = GridField::Zero(n), rp_wb = GridField::Zero(n);
    for (int k = 0; k < n; ++k) {
        if (excised[k]) continue;
        if (2 * jet.a1[k].norm() * jet.a1b[k].norm() < 1e-3)
            throw Error(ErrorKind::AdaptedFrameDegenerate,
                        "webster: sin α below 1e-3 outside the excision at node " + std::to_string(k));
        const AdaptedFrame af = adapted_frame(jet, metric, k);
        const double c2 = af.c * af.c, s2 = af.s * af.s, cs = af.c * af.s;
        auto mixed = [&](int dir) { return af.phibar[dir](1, 0) - std::conj(af.phibar[1 - dir](1, 0)); };
        cplx rperp[2], rho[2];
        for (int dir = 0; dir < 2; ++dir) {
            rperp[dir] = kI * (s2 * af.phi[dir](0, 0) - c2 * af.phi[dir](1, 1) - cs * mixed(dir));
            rho[dir] = kI * (-c2 * af.phi[dir](0, 0) + s2 * af.phi[dir](1, 1) - cs * mixed(dir));
        }
        rp_w(k) = rperp[0];
        rp_wb(k) = rperp[1];
        if (!out.mask[k] && dom.active(k)) {
            const double lam = jet.lambda(k);
            const cplx rw = -kI * jet.lambda_w(k) / lam, rwb = kI * jet.lambda_wb(k) / lam;
            out.rho_residual = std::max(out.rho_residual, std::max(std::abs(rho[0] - rw), std::abs(rho[1] - rwb)));
        }

        // Structure expression in the adapted frame (φ = λ dw normalization, then ×2).
        const double l2 = jet.lambda(k) * jet.lambda(k);
        const Mat2c& u = af.u;
        const Vec2c a11 = u * jet.second.a11[k], a11b = u * jet.second.a11b[k];
        const Vec2c a1b1 = u * jet.second.a1b1[k], a1b1b = u * jet.second.a1b1b[k];
        double kp = 0.5 * kg(k);
        kp += 2 * (std::norm(a1b1b(0)) + std::norm(a11(1)) - std::norm(a1b1(0)) - std::norm(a11b(1)));
        const FramePacket fp = chern_curvature(metric, jet.samples.f[k]);
        const Vec4c ow = jet.on_w(k), owb = jet.on_wb(k);
        cplx om[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) om[i][j] = pullback_2form(fp.curvature[i][j], ow, owb) / l2;
        cplx omp[2][2] = {};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) omp[i][j] += u(i, p) * om[p][q] * std::conj(u(j, q));
        kp += (-omp[0][0] + omp[1][1]).real();
        if (fp.torsion.l12.norm() > 0) {
            const TorsionDerivatives td = torsion_derivatives(metric, jet.samples.f[k]);
            // L'^i_{12,l} (holomorphic l) and L'^i_{12,l̄}.
            auto hol = [&](int i, int l) {
                cplx s = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            for (int e = 0; e < 2; ++e)
                                s += u(i, a) * std::conj(u(0, b) * u(1, c) * u(l, e)) * td.hol[a][b][c][e];
                return s;
            };
            auto anti = [&](int i, int l) {
                cplx s = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            for (int e = 0; e < 2; ++e)
                                s += u(i, a) * std::conj(u(0, b) * u(1, c)) * u(l, e) * td.anti[a][b][c][e];
                return s;
            };
            kp += 2 * (hol(1, 1) - hol(0, 0)).real() * cs;
            kp -= 2 * anti(0, 1).real() * s2;
            kp += 2 * anti(1, 0).real() * c2;
        }
        out.k_structure(k) = 2 * kp;
    }
    const GridField d = dom.deriv_local(rp_wb, Direction::W) - dom.deriv_local(rp_w, Direction::WBar);
    for (int k = 0; k < n; ++k) {
        if (out.mask[k]) continue;
        const double l2 = jet.lambda(k) * jet.lambda(k);
        out.k_perp(k) = 2.0 * (kI * d(k) / l2).real();
    }
    return out;
}

EulerNumbers euler_numbers(const Eigen::VectorXd& k, const Eigen::VectorXd& k_perp, const SurfaceDomain& dom,
                           const Eigen::VectorXd& lambda, const std::vector<bool>* mask, double max_fraction) {
    EulerNumbers e;
    e.chi_T = dom.integrate(real_field(k), lambda).real() / (2 * kPi);
    e.chi_N = dom.integrate(real_field(k_perp), lambda).real() / (2 * kPi);
    if (mask) {
        double area = 0, cut = 0, ct = 0, cn = 0;
        for (int m = 0; m < dom.size(); ++m) {
            const double da = dom.node(m).weight * lambda(m) * lambda(m);
            area += da;
            if (!(*mask)[m]) continue;
            cut += da;
            ct += da * k(m);
            cn += da * k_perp(m);
        }
        e.excised_fraction = area > 0 ? cut / area : 0;
        e.correction_T = ct / (2 * kPi);
        e.correction_N = cn / (2 * kPi);
        if (e.excised_fraction > max_fraction)
            throw Error(ErrorKind::ExcisionTooLarge, "webster: excised area fraction " +
                                                         std::to_string(e.excised_fraction) + " exceeds limit");
    }
    return e;
}

GridField pullback_density(const PullbackJet& jet, const std::vector<TwoForm>& forms) {
    GridField out(jet.size());
    for (int k = 0; k < jet.size(); ++k) out(k) = -2.0 * kI * pullback_2form(forms[k], jet.on_w(k), jet.on_wb(k));
    return out;
}

double c1_pairing(const MetricField& metric, const PullbackJet& jet, const SurfaceDomain& dom) {
    std::vector<TwoForm> ric(jet.size());
    for (int k = 0; k < jet.size(); ++k) ric[k] = ricci_form(metric, jet.samples.f[k]);
    return dom.integrate(pullback_density(jet, ric)).real() / (2 * kPi);
}

double stokes_integral(const MetricField& metric, const PullbackJet& jet, const SurfaceDomain& dom) {
    if (metric.kahler()) return 0.0;
    std::vector<TwoForm> dth(jet.size());
    for (int k = 0; k < jet.size(); ++k) dth[k] = d_theta_L(metric, jet.samples.f[k]);
    // f*dθ_L is imaginary; its imaginary part carries the integral.
    return dom.integrate(pullback_density(jet, dth)).imag() / (2 * kPi);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> log_laplacians(const PullbackJet& jet, const SurfaceDomain& dom) {
    const int n = dom.size();
    auto half_log_lap = [&](const std::vector<Vec2c>& a) {
        GridField u(n);
        for (int k = 0; k < n; ++k) u(k) = a[k].squaredNorm();
        const GridField uw = dom.deriv(u, Direction::W), uwb = dom.deriv(u, Direction::WBar);
        const GridField uwwb = dom.deriv(uw, Direction::WBar);
        Eigen::VectorXd out(n);
        for (int k = 0; k < n; ++k) {
            const double l2 = jet.lambda(k) * jet.lambda(k);
            const double uk = u(k).real();
            out(k) = uk > 0 ? 0.5 * 4.0 / l2 * (uwwb(k) / uk - uw(k) * uwb(k) / (uk * uk)).real()
                            : std::numeric_limits<double>::quiet_NaN();
        }
        return out;
    };
    return {half_log_lap(jet.a1), half_log_lap(jet.a1b)};
}

double torsion_product_residual(const PullbackJet& jet, const MetricField& metric, const std::vector<bool>& excised) {
    (void)metric;
    double res = 0.0;
    for (int k = 0; k < jet.size(); ++k) {
        if (excised[k]) continue;
        const double c = jet.a1[k].norm(), s = jet.a1b[k].norm();
        if (c < 1e-6 || s < 1e-6) continue;
        Mat2c u;
        u.row(0) = jet.a1[k].adjoint() / c;
        u.row(1) = jet.a1b[k].adjoint() / s;
        const Vec2c l = u * jet.frames[k].torsion.l12 / u.determinant();
        const double lhs = 2 * jet.second.a1b1[k].squaredNorm();
        const cplx rhs = l(0) * l(1) * (2 * c * s);
        res = std::max({res, std::abs(lhs - rhs), std::abs(lhs - std::conj(rhs))});
    }
    return res;
}

WebsterReport verify(const Subject& subject, const PullbackJet& jet, const WebsterConfig& config) {
    if (!jet.has_second) throw Error(ErrorKind::DerivativeUnavailable, "webster: second-order jet missing");
    const SurfaceDomain& dom = subject.domain;
    const MetricField& metric = subject.metric;
    WebsterReport r;
    r.chern_mean_curvature = max_norm(chern_mean_curvature(jet));

    AngleField angle = kahler_angle(jet);
    r.alpha = angle.alpha;
    r.alpha_min = std::numeric_limits<double>::infinity();
    r.alpha_max = -r.alpha_min;
    for (int k = 0; k < dom.size(); ++k)
        if (dom.active(k)) {
            r.alpha_min = std::min(r.alpha_min, angle.alpha(k));
            r.alpha_max = std::max(r.alpha_max, angle.alpha(k));
        }

    r.c1 = c1_pairing(metric, jet, dom);
    r.c1_round = std::lround(r.c1);
    r.stokes_residual = std::abs(stokes_integral(metric, jet, dom));
    r.k = gauss_curvature(jet, dom);
    r.gauss_crosscheck = max_over(r.k - gauss_curvature_classical(jet.lambda, dom), dom);

    if (r.chern_mean_curvature > config.tol_chern) {
        r.classification = Classification::NotChernMinimal;
        r.skipped = true;
        return r;
    }
    r.classification = analyse_angle(angle, dom, config.tol_detect, config.winding_radius, config.tol_holomorphic);
    r.P = angle.P;
    r.Q = angle.Q;
    r.points = angle.points;

    r.k_perp = normal_curvature(jet, metric);
    const std::vector<bool> mask = excision_mask(angle.points, dom, config.excision_radius);
    const EulerNumbers e = euler_numbers(r.k, r.k_perp, dom, jet.lambda, &mask, 1.0);
    r.excised_fraction = e.excised_fraction;
    r.chi_T = e.chi_T;
    r.chi_N = e.chi_N;
    r.chi_T_round = std::lround(r.chi_T);
    r.chi_N_round = std::lround(r.chi_N);
    r.sup_k_plus_kperp = max_over(r.k + r.k_perp, dom);
    if (r.classification != Classification::Generic) {
        r.skipped = true;
        return r;
    }

    r.residual_difference = std::abs((r.P - r.Q) + r.c1);
    r.residual_sum = std::abs((r.P + r.Q) + r.chi_T + r.chi_N);

    const auto [lap_c, lap_s] = log_laplacians(jet, dom);
    r.laplacian_residual = Eigen::VectorXd::Zero(dom.size());
    std::vector<TwoForm> ric(jet.size()), dth(jet.size());
    for (int k = 0; k < jet.size(); ++k) {
        ric[k] = ricci_form(metric, jet.samples.f[k]);
        dth[k] = metric.kahler() ? TwoForm::Zero() : d_theta_L(metric, jet.samples.f[k]);
    }
    const GridField ric_xy = pullback_density(jet, ric), th_xy = pullback_density(jet, dth);
    for (int k = 0; k < dom.size(); ++k) {
        if (!dom.active(k) || mask[k]) continue;
        r.laplacian_residual(k) = std::abs(lap_c(k) + lap_s(k) - r.k(k) - r.k_perp(k));
        r.pointwise_laplacian_residual = std::max(r.pointwise_laplacian_residual, r.laplacian_residual(k));
        const double l2 = jet.lambda(k) * jet.lambda(k);
        const double balance = lap_s(k) - lap_c(k) - (ric_xy(k) + kI * th_xy(k)).real() / l2;
        r.pointwise_balance_residual = std::max(r.pointwise_balance_residual, std::abs(balance));
    }
    r.torsion_product_residual = torsion_product_residual(jet, metric, mask);
    try {
        const AdaptedCurvature ac = normal_curvature_adapted(jet, metric, dom, mask);
        for (int k = 0; k < dom.size(); ++k) {
            if (!dom.active(k) || ac.mask[k]) continue;
            r.normal_structure_residual = std::max({r.normal_structure_residual, std::abs(ac.k_perp(k) - r.k_perp(k)),
                                                 std::abs(ac.k_structure(k) - r.k_perp(k))});
        }
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::AdaptedFrameDegenerate) throw;
        r.normal_structure_residual = std::numeric_limits<double>::quiet_NaN();
    }

    const double gap = config.rounding_gap;
    r.accepted = angle.orders_consistent && std::abs(r.chi_T - r.chi_T_round) < gap &&
                 std::abs(r.chi_N - r.chi_N_round) < gap && std::abs(r.c1 - r.c1_round) < gap &&
                 r.residual_difference < gap && r.residual_sum < gap;
    return r;
}

ConstantAngle constant_angle_check(const WebsterReport& report, double tol_alpha, double tol_k, double delta) {
    ConstantAngle c;
    c.alpha_spread = report.alpha_max - report.alpha_min;
    c.is_constant_real = c.alpha_spread < tol_alpha && report.alpha_min > delta && report.alpha_max < kPi - delta;
    c.sup_k_plus_kperp = report.sup_k_plus_kperp;
    c.consistent = c.is_constant_real == (c.sup_k_plus_kperp < tol_k);
    return c;
}

WolfsonBound wolfson_bound(int genus, int c1, int i_f, int d_f, int p, int q) {
    WolfsonBound b;
    b.lhs = (2 - 2L * genus) + std::labs(c1) + i_f - 2L * d_f;
    b.middle = -2L * std::min(p, q);
    b.holds = b.lhs <= b.middle && b.middle <= 0;
    return b;
}

}  // namespace hermsurf
