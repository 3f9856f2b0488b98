#include "hermsurf/ambient.hpp"

#include "hermsurf/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace hermsurf {

namespace {

using Vec16c = Eigen::Matrix<cplx, 16, 1>;

struct CoframeJet {
    MetricJet metric;
    Mat2c a;
    std::array<Mat2c, 4> da;  // real partials
};

void check_positive(const Mat2c& g) {
    if ((g - g.adjoint()).norm() > 1e-10 * (1.0 + g.norm()))
        throw Error(ErrorKind::NonPositiveMetric, "ambient.metric: metric matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat2c> es(g, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()(0) > 1e-14))
        throw Error(ErrorKind::NonPositiveMetric, "ambient.metric: metric is not positive definite");
}

CoframeJet coframe_jet(const MetricField& metric, const ChartPoint& p) {
    CoframeJet c;
    c.metric = metric.jet(p);
    check_positive(c.metric.g);
    const Mat2c gt = c.metric.g.transpose();
    Eigen::LLT<Mat2c> llt(gt);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::NonPositiveMetric, "ambient.metric: Cholesky factorization failed");
    c.a = llt.matrixL().adjoint();
    const Mat2c ainv = c.a.inverse();
    const Mat2c ainv_h = ainv.adjoint();
    for (int k = 0; k < 4; ++k) {
        const Mat2c x = ainv_h * c.metric.dg[k].transpose() * ainv;
        Mat2c u = Mat2c::Zero();
        u(0, 1) = x(0, 1);
        u(0, 0) = 0.5 * x(0, 0);
        u(1, 1) = 0.5 * x(1, 1);
        c.da[k] = u * c.a;
    }
    if (metric.has_gauge()) {
        const GaugeJet gj = metric.gauge(p);
        for (int k = 0; k < 4; ++k) c.da[k] = gj.du[k] * c.a + gj.u * c.da[k];
        c.a = gj.u * c.a;
    }
    return c;
}

Vec16c pack(const MatOneForm& w) {
    Vec16c v;
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v(4 * b + 2 * i + j) = w[b](i, j);
    return v;
}

MatOneForm unpack(const Vec16c& v) {
    MatOneForm w;
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) w[b](i, j) = v(4 * b + 2 * i + j);
    return w;
}

/// Exterior derivative of a matrix-valued 1-form field sampled through `fn`.
MatTwoForm exterior_matrix(const std::function<Vec16c(const ChartPoint&)>& fn, const ChartPoint& p,
                           double h) {
    std::array<MatOneForm, 4> real_partials;
    for (int a = 0; a < 4; ++a) real_partials[a] = unpack(richardson_derivative(fn, p, a, h));
    MatTwoForm out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::array<OneForm, 4> rp;
            for (int a = 0; a < 4; ++a) rp[a] = entry(real_partials[a], i, j);
            out[i][j] = exterior(wirtinger(rp));
        }
    return out;
}

TwoForm exterior_of(const std::function<OneForm(const ChartPoint&)>& fn, const ChartPoint& p, double h) {
    std::array<OneForm, 4> rp;
    for (int a = 0; a < 4; ++a) rp[a] = richardson_derivative(fn, p, a, h);
    return exterior(wirtinger(rp));
}

Torsion torsion_from(const Mat2c& a, const std::array<Mat2c, 2>& c) {
    Vec2c t;
    for (int k = 0; k < 2; ++k) t(k) = c[0](1, k) - c[1](0, k);
    Torsion tor;
    tor.l12 = (a * t) / (2.0 * a.determinant());
    return tor;
}

/// Real 1-form components along (x1, y1, x2, y2) to the (dz, dz̄) basis.
OneForm real_to_complex(const Vec4c& r) {
    OneForm c;
    for (int m = 0; m < 2; ++m) {
        c(m) = 0.5 * (r(2 * m) - kI * r(2 * m + 1));
        c(2 + m) = 0.5 * (r(2 * m) + kI * r(2 * m + 1));
    }
    return c;
}

double max_abs(const OneForm& c) { return c.cwiseAbs().maxCoeff(); }

}  // namespace

std::array<Mat2c, 2> holomorphic_christoffel(const MetricJet& jet) {
    const Mat2c ginv = jet.g.inverse();
    const auto dw = wirtinger(jet.dg);
    return {dw[0] * ginv, dw[1] * ginv};
}

Mat2c unitary_coframe(const MetricField& metric, const ChartPoint& p) { return coframe_jet(metric, p).a; }

FramePacket chern_connection(const MetricField& metric, const ChartPoint& p) {
    const CoframeJet cj = coframe_jet(metric, p);
    const auto c = holomorphic_christoffel(cj.metric);
    const Mat2c ainv = cj.a.inverse();
    const auto daw = wirtinger(cj.da);

    MatOneForm w;
    for (int b = 0; b < 4; ++b) {
        w[b] = -daw[b] * ainv;
        if (b < 2) w[b] += cj.a * c[b].transpose() * ainv;
    }
    // Project onto skew-Hermitian forms: ω^i_j + conj(ω^j_i) = 0.
    MatOneForm sym = w;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const OneForm v = 0.5 * (entry(w, i, j) - conj_form(entry(w, j, i)));
            for (int b = 0; b < 4; ++b) sym[b](i, j) = v(b);
        }

    FramePacket fp;
    fp.point = p;
    fp.coframe = cj.a;
    fp.connection = sym;
    fp.torsion = torsion_from(cj.a, c);
    return fp;
}

FramePacket chern_curvature(const MetricField& metric, const ChartPoint& p) {
    metric.require_window(p);
    FramePacket fp = chern_connection(metric, p);
    auto fn = [&](const ChartPoint& q) { return pack(chern_connection(metric, q).connection); };
    const MatTwoForm dw = exterior_matrix(fn, p, metric.fd_step(p));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            TwoForm om = dw[i][j];
            for (int k = 0; k < 2; ++k) om += wedge(entry(fp.connection, i, k), entry(fp.connection, k, j));
            fp.curvature[i][j] = om;
            const TwoForm f = to_frame(om, fp.coframe);
            fp.r_hol[i][j] = 0.5 * f(0, 1);
            fp.r_anti[i][j] = 0.5 * f(2, 3);
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) fp.r_mix[i][j][k][l] = f(k, 2 + l);
        }
    fp.has_curvature = true;
    return fp;
}

TwoForm ricci_form(const MetricField& metric, const ChartPoint& p) {
    const FramePacket fp = chern_curvature(metric, p);
    return kI * (fp.curvature[0][0] + fp.curvature[1][1]);
}

TwoForm ricci_form_potential(const MetricField& metric, const ChartPoint& p) {
    metric.require_window(p);
    // ∂̄ log det G = tr(G^{-1} ∂̄G); its exterior derivative is ∂∂̄ log det G.
    auto dbar_log_det = [&](const ChartPoint& q) {
        const MetricJet j = metric.jet(q);
        const Mat2c ginv = j.g.inverse();
        const auto dw = wirtinger(j.dg);
        OneForm c = OneForm::Zero();
        c(2) = (ginv * dw[2]).trace();
        c(3) = (ginv * dw[3]).trace();
        return c;
    };
    return -kI * exterior_of(dbar_log_det, p, metric.fd_step(p));
}

Mat4d real_metric(const Mat2c& g) {
    Mat4d r;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            r(2 * j, 2 * k) = g(j, k).real();
            r(2 * j, 2 * k + 1) = g(j, k).imag();
            r(2 * j + 1, 2 * k) = -g(j, k).imag();
            r(2 * j + 1, 2 * k + 1) = g(j, k).real();
        }
    return r;
}

RealChristoffel real_christoffel(const MetricField& metric, const ChartPoint& p) {
    const MetricJet j = metric.jet(p);
    RealChristoffel rc;
    rc.metric = real_metric(j.g);
    std::array<Mat4d, 4> dg;
    for (int a = 0; a < 4; ++a) dg[a] = real_metric(j.dg[a]);
    const Mat4d ginv = rc.metric.inverse();
    for (int c = 0; c < 4; ++c) {
        rc.christoffel[c].setZero();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int d = 0; d < 4; ++d) s += ginv(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
                rc.christoffel[c](a, b) = 0.5 * s;
            }
    }
    return rc;
}

RealRiemann real_riemann(const MetricField& metric, const ChartPoint& p) {
    metric.require_window(p);
    const RealChristoffel rc = real_christoffel(metric, p);
    using Vec64 = Eigen::Matrix<double, 64, 1>;
    auto fn = [&](const ChartPoint& q) {
        const RealChristoffel r = real_christoffel(metric, q);
        Vec64 v;
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) v(16 * c + 4 * a + b) = r.christoffel[c](a, b);
        return v;
    };
    std::array<Vec64, 4> d;
    const double h = metric.fd_step(p);
    for (int a = 0; a < 4; ++a) d[a] = richardson_derivative(fn, p, a, h);
    auto gam = [&](int a, int b, int c) { return rc.christoffel[a](b, c); };
    auto dgam = [&](int axis, int a, int b, int c) { return d[axis](16 * a + 4 * b + c); };

    RealRiemann out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int e = 0; e < 4; ++e) {
                    double s = dgam(c, a, e, b) - dgam(e, a, c, b);
                    for (int m = 0; m < 4; ++m) s += gam(a, c, m) * gam(m, e, b) - gam(a, e, m) * gam(m, c, b);
                    out.r[a][b][c][e] = s;
                }
    return out;
}

LeviCivitaPacket levi_civita(const MetricField& metric, const ChartPoint& p) {
    const CoframeJet cj = coframe_jet(metric, p);
    const RealChristoffel rc = real_christoffel(metric, p);
    const Mat2c ainv = cj.a.inverse();

    auto vector_of = [](const Mat2c& m, int i) {
        Vec4c e;
        for (int j = 0; j < 2; ++j) {
            e(2 * j) = 0.5 * m(j, i);
            e(2 * j + 1) = -0.5 * kI * m(j, i);
        }
        return e;
    };

    Mat4c basis;
    for (int i = 0; i < 2; ++i) {
        basis.col(i) = vector_of(ainv, i);
        basis.col(2 + i) = basis.col(i).conjugate();
    }
    const Mat4c basis_inv = basis.inverse();

    LeviCivitaPacket out;
    out.phi = zero_matform();
    out.phibar = zero_matform();
    for (int i = 0; i < 2; ++i) {
        // comp(row, a): component `row` of ∇_{∂a} e_i in the frame (e1, e2, ē1, ē2).
        Eigen::Matrix<cplx, 4, 4> comp;
        const Vec4c e = vector_of(ainv, i);
        for (int a = 0; a < 4; ++a) {
            const Mat2c dainv = -ainv * cj.da[a] * ainv;
            Vec4c v = vector_of(dainv, i);
            for (int c = 0; c < 4; ++c)
                for (int b = 0; b < 4; ++b) v(c) += rc.christoffel[c](a, b) * e(b);
            comp.col(a) = basis_inv * v;
        }
        for (int j = 0; j < 2; ++j) {
            const OneForm phi = real_to_complex(comp.row(j).transpose());
            const OneForm phibar = real_to_complex(comp.row(2 + j).transpose());
            for (int b = 0; b < 4; ++b) {
                out.phi[b](j, i) = phi(b);
                out.phibar[b](j, i) = phibar(b);
            }
        }
    }
    return out;
}

std::pair<double, double> check_connection_difference(const MetricField& metric, const ChartPoint& p) {
    return check_connection_difference(metric, metric, p);
}

std::pair<double, double> check_connection_difference(const MetricField& metric, const MetricField& lc_metric,
                                                      const ChartPoint& p) {
    const FramePacket fp = chern_connection(metric, p);
    const LeviCivitaPacket lc = levi_civita(lc_metric, p);
    const Mat2c& a = fp.coframe;
    double r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            OneForm expect = entry(fp.connection, i, j);
            OneForm expect_bar = OneForm::Zero();
            for (int k = 0; k < 2; ++k) {
                expect += fp.torsion(i, j, k) * coframe_form(a, k, false) -
                          std::conj(fp.torsion(j, i, k)) * coframe_form(a, k, true);
                expect_bar += fp.torsion(k, i, j) * coframe_form(a, k, true);
            }
            r1 = std::max(r1, max_abs(entry(lc.phi, i, j) - expect));
            r2 = std::max(r2, max_abs(entry(lc.phibar, j, i) - expect_bar));
        }
    return {r1, r2};
}

namespace {

OneForm theta_from(const FramePacket& fp) {
    OneForm th = OneForm::Zero();
    for (int i = 0; i < 2; ++i) {
        const cplx t = fp.torsion(0, 0, i) + fp.torsion(1, 1, i);
        th += t * coframe_form(fp.coframe, i, false) - std::conj(t) * coframe_form(fp.coframe, i, true);
    }
    return th;
}

}  // namespace

OneForm theta_L(const MetricField& metric, const ChartPoint& p) { return theta_from(chern_connection(metric, p)); }

TwoForm d_theta_L(const MetricField& metric, const ChartPoint& p) {
    metric.require_window(p);
    auto fn = [&](const ChartPoint& q) { return theta_L(metric, q); };
    return exterior_of(fn, p, metric.fd_step(p));
}

TorsionDerivatives torsion_derivatives(const MetricField& metric, const ChartPoint& p) {
    metric.require_window(p);
    const FramePacket fp = chern_connection(metric, p);
    auto fn = [&](const ChartPoint& q) -> Vec2c { return chern_connection(metric, q).torsion.l12; };
    std::array<Vec2c, 4> rp;
    const double h = metric.fd_step(p);
    for (int a = 0; a < 4; ++a) rp[a] = richardson_derivative(fn, p, a, h);
    const auto dw = wirtinger(rp);

    TorsionDerivatives out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const double sgn = j == k ? 0.0 : (j == 0 ? 1.0 : -1.0);
                OneForm d;
                for (int b = 0; b < 4; ++b) d(b) = sgn * dw[b](i);
                for (int l = 0; l < 2; ++l) {
                    d += fp.torsion(l, j, k) * entry(fp.connection, i, l) -
                         fp.torsion(i, l, k) * entry(fp.connection, l, j) -
                         fp.torsion(i, j, l) * entry(fp.connection, l, k);
                }
                const OneForm f = to_frame(d, fp.coframe);
                for (int l = 0; l < 2; ++l) {
                    out.hol[i][j][k][l] = f(l);
                    out.anti[i][j][k][l] = f(2 + l);
                }
            }
    return out;
}

TwoForm d_theta_L_structure(const MetricField& metric, const ChartPoint& p) {
    const FramePacket fp = chern_connection(metric, p);
    const TorsionDerivatives td = torsion_derivatives(metric, p);
    // Assemble in the unitary coframe, then pull back to (dz, dz̄).
    TwoForm f = TwoForm::Zero();
    for (int i = 0; i < 2; ++i) {
        OneForm dt = OneForm::Zero();
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                dt(l) += td.hol[k][k][i][l];
                dt(2 + l) += td.anti[k][k][i][l];
            }
        OneForm xi = OneForm::Zero();
        xi(i) = 1.0;
        f += wedge(dt, xi);
        const cplx t = fp.torsion(0, 0, i) + fp.torsion(1, 1, i);
        f(0, 1) += 2.0 * t * fp.torsion.l12(i);
        f(1, 0) -= 2.0 * t * fp.torsion.l12(i);
    }
    f -= conj_form(f);
    const Mat4c m = frame_matrix(fp.coframe);
    return m.transpose() * f * m;
}

double structure_residual(const MetricField& metric, const ChartPoint& p, double h) {
    const FramePacket fp = chern_connection(metric, p);
    std::array<Mat2c, 4> rp;
    for (int a = 0; a < 4; ++a)
        rp[a] = (unitary_coframe(metric, shifted(p, a, h)) - unitary_coframe(metric, shifted(p, a, -h))) / (2 * h);
    double res = 0.0;
    for (int i = 0; i < 2; ++i) {
        std::array<OneForm, 4> partials;
        for (int a = 0; a < 4; ++a) {
            partials[a] = OneForm::Zero();
            partials[a](0) = rp[a](i, 0);
            partials[a](1) = rp[a](i, 1);
        }
        const TwoForm domega = exterior(wirtinger(partials));
        TwoForm rhs = 2.0 * fp.torsion.l12(i) *
                      wedge(coframe_form(fp.coframe, 0, false), coframe_form(fp.coframe, 1, false));
        for (int j = 0; j < 2; ++j) rhs -= wedge(entry(fp.connection, i, j), coframe_form(fp.coframe, j, false));
        res = std::max(res, (domega - rhs).cwiseAbs().maxCoeff());
    }
    return res;
}

}  // namespace hermsurf
