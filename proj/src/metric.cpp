#include "hermsurf/metric.hpp"

#include "hermsurf/errors.hpp"
#include "hermsurf/forms.hpp"

#include <cmath>
#include <random>

namespace hermsurf {

bool AmbientChart::contains(const ChartPoint& p) const {
    if (!std::isfinite(p(0).real()) || !std::isfinite(p(0).imag()) || !std::isfinite(p(1).real()) ||
        !std::isfinite(p(1).imag()))
        return false;
    const Vec4d x = to_real(p);
    if (x.cwiseAbs().maxCoeff() > box_half_width) return false;
    if (quotient == ChartQuotient::Dilation) return p.norm() > 1e-12;
    return true;
}

ChartPoint AmbientChart::reduce(const ChartPoint& p) const {
    switch (quotient) {
    case ChartQuotient::Dilation: {
        ChartPoint q = p;
        double r = q.norm();
        while (r >= 2.0) {
            q /= 2.0;
            r /= 2.0;
        }
        while (r < 1.0) {
            q *= 2.0;
            r *= 2.0;
        }
        return q;
    }
    case ChartQuotient::Lattice: {
        Vec4d x = to_real(p);
        for (int a = 0; a < 4; ++a) x(a) -= 2 * kPi * std::floor(x(a) / (2 * kPi));
        return from_real(x);
    }
    default:
        return p;
    }
}

MetricField::MetricField(std::string name, AmbientChart chart, MetricEntries entries, bool kahler)
    : name_(std::move(name)), chart_(std::move(chart)), entries_(std::move(entries)), kahler_(kahler) {}

Mat2c MetricField::eval(const ChartPoint& p) const {
    std::array<Dual, 2> z{Dual(p(0)), Dual(p(1))};
    const auto e = entries_(z);
    Mat2c g;
    g << e[0].v, e[1].v, std::conj(e[1].v), e[2].v;
    return g;
}

MetricJet MetricField::jet(const ChartPoint& p) const {
    MetricJet j;
    if (fd_first_) {
        require_window(p);
        j.g = eval(p);
        for (int a = 0; a < 4; ++a)
            j.dg[a] = richardson_derivative([&](const ChartPoint& q) { return eval(q); }, p, a, fd_step(p));
        return j;
    }
    const auto e = entries_(dual_coordinates(p));
    j.g << e[0].v, e[1].v, std::conj(e[1].v), e[2].v;
    for (int a = 0; a < 4; ++a) {
        // Derivatives along real axes of a Hermitian matrix stay Hermitian.
        j.dg[a] << e[0].d[a], e[1].d[a], std::conj(e[1].d[a]), e[2].d[a];
    }
    return j;
}

double MetricField::fd_step(const ChartPoint& p) const {
    double scale = 1.0;
    if (chart_.quotient == ChartQuotient::Dilation) scale = p.norm();
    return fd_relative_ * scale;
}

GaugeJet MetricField::gauge(const ChartPoint& p) const {
    GaugeJet j;
    if (!gauge_) {
        j.u = Mat2c::Identity();
        for (auto& d : j.du) d.setZero();
        return j;
    }
    const auto e = gauge_(dual_coordinates(p));
    j.u << e[0].v, e[1].v, e[2].v, e[3].v;
    for (int a = 0; a < 4; ++a) j.du[a] << e[0].d[a], e[1].d[a], e[2].d[a], e[3].d[a];
    return j;
}

void MetricField::require_window(const ChartPoint& p) const {
    const double h = fd_step(p);
    for (int a = 0; a < 4; ++a)
        for (double s : {-h, h})
            if (!chart_.contains(shifted(p, a, s)))
                throw Error(ErrorKind::DerivativeUnavailable,
                            "ambient.metric: finite-difference window leaves chart '" + chart_.id + "'");
}

MetricField flat_metric() {
    return MetricField("flat", AmbientChart{"C2", ChartQuotient::None},
                       [](const std::array<Dual, 2>&) {
                           return std::array<Dual, 3>{Dual(1.0), Dual(0.0), Dual(1.0)};
                       },
                       true);
}

MetricField flat_torus_metric() {
    return MetricField("flat-torus", AmbientChart{"T4", ChartQuotient::Lattice},
                       [](const std::array<Dual, 2>&) {
                           return std::array<Dual, 3>{Dual(1.0), Dual(0.0), Dual(1.0)};
                       },
                       true);
}

MetricField fubini_study_metric() {
    auto entries = [](const std::array<Dual, 2>& z) {
        const Dual r2 = z[0] * conj(z[0]) + z[1] * conj(z[1]);
        const Dual s = 1.0 + r2;
        const Dual s2 = s * s;
        return std::array<Dual, 3>{(s - conj(z[0]) * z[0]) / s2, -(conj(z[0]) * z[1]) / s2,
                                   (s - conj(z[1]) * z[1]) / s2};
    };
    return MetricField("fubini-study", AmbientChart{"CP2-affine", ChartQuotient::Projective}, entries, true);
}

MetricField hopf_metric() {
    auto entries = [](const std::array<Dual, 2>& z) {
        const Dual inv = 1.0 / (z[0] * conj(z[0]) + z[1] * conj(z[1]));
        return std::array<Dual, 3>{inv, Dual(0.0), inv};
    };
    return MetricField("hopf", AmbientChart{"hopf-annulus", ChartQuotient::Dilation}, entries, false);
}

MetricField metric_by_name(const std::string& name) {
    if (name == "flat") return flat_metric();
    if (name == "flat-torus") return flat_torus_metric();
    if (name == "fubini-study") return fubini_study_metric();
    if (name == "hopf") return hopf_metric();
    throw Error(ErrorKind::ConfigError, "unknown metric '" + name + "'");
}

GaugeEntries random_gauge(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::array<double, 16> c{};
    for (auto& v : c) v = uni(rng);
    return [c](const std::array<Dual, 2>& z) {
        const Dual x1 = real(z[0]), y1 = imag(z[0]), x2 = real(z[1]), y2 = imag(z[1]);
        auto smooth = [&](int k) {
            return c[k] * sin(c[k + 1] * x1 + c[k + 2] * y1 + c[k + 3] * x2 + 0.7 * y2 + c[k]);
        };
        const Dual a = smooth(0), b = smooth(4), cc = smooth(8), d = smooth(12);
        const Dual phase = exp(kI * d);
        const Dual ea = exp(kI * a), ec = exp(kI * cc);
        const Dual cb = cos(b), sb = sin(b);
        return std::array<Dual, 4>{phase * ea * cb, -phase * conj(ec) * sb, phase * ec * sb,
                                   phase * conj(ea) * cb};
    };
}

}  // namespace hermsurf
