#include "hermsurf/immersion.hpp"

#include "hermsurf/errors.hpp"

#include <cmath>
#include <random>

namespace hermsurf {

namespace {

struct LatticeDerivs {
    cplx s_w, s_wb, t_w, t_wb;
};

LatticeDerivs lattice_derivs(const SurfaceDomain& dom) {
    if (dom.kind() != DomainKind::Torus) return {0.0, 0.0, 0.0, 0.0};
    const cplx o1 = dom.omega1(), o2 = dom.omega2();
    const cplx det = o1 * std::conj(o2) - std::conj(o1) * o2;
    return {std::conj(o2) / det, -o2 / det, -std::conj(o1) / det, o1 / det};
}

struct ComponentJet {
    GridField v, w, wb, ww, wwb, wbwb;
};

ComponentJet component_jet(const GridField& f, const SurfaceDomain& dom) {
    ComponentJet j;
    j.v = f;
    j.w = dom.deriv(f, Direction::W);
    j.wb = dom.deriv(f, Direction::WBar);
    j.ww = dom.deriv(j.w, Direction::W);
    j.wwb = dom.deriv(j.w, Direction::WBar);
    j.wbwb = dom.deriv(j.wb, Direction::WBar);
    return j;
}

void resize(SurfaceSamples& s, int n) {
    for (auto* v : {&s.f, &s.fw, &s.fwb, &s.fww, &s.fwwb, &s.fwbwb}) v->assign(n, ChartPoint::Zero());
    s.ambient_chart.assign(n, -1);
}

SurfaceSamples sample_affine(const ImmersionMap& map, const SurfaceDomain& dom) {
    SurfaceSamples s;
    resize(s, dom.size());
    const LatticeDerivs ld = lattice_derivs(dom);
    std::array<ComponentJet, 2> cj{component_jet(map.core[0], dom), component_jet(map.core[1], dom)};
    for (int k = 0; k < dom.size(); ++k) {
        const Node& nd = dom.node(k);
        for (int i = 0; i < 2; ++i) {
            const ComponentJet& c = cj[i];
            if (map.jump == JumpKind::Additive) {
                s.f[k](i) = c.v(k) + map.jump_s(i) * nd.s + map.jump_t(i) * nd.t;
                s.fw[k](i) = c.w(k) + map.jump_s(i) * ld.s_w + map.jump_t(i) * ld.t_w;
                s.fwb[k](i) = c.wb(k) + map.jump_s(i) * ld.s_wb + map.jump_t(i) * ld.t_wb;
                s.fww[k](i) = c.ww(k);
                s.fwwb[k](i) = c.wwb(k);
                s.fwbwb[k](i) = c.wbwb(k);
            } else {
                const cplx e = std::exp(map.log_mu_s * nd.s + map.log_mu_t * nd.t);
                const cplx kw = map.log_mu_s * ld.s_w + map.log_mu_t * ld.t_w;
                const cplx kb = map.log_mu_s * ld.s_wb + map.log_mu_t * ld.t_wb;
                s.f[k](i) = e * c.v(k);
                s.fw[k](i) = e * (c.w(k) + kw * c.v(k));
                s.fwb[k](i) = e * (c.wb(k) + kb * c.v(k));
                s.fww[k](i) = e * (c.ww(k) + 2.0 * kw * c.w(k) + kw * kw * c.v(k));
                s.fwwb[k](i) = e * (c.wwb(k) + kw * c.wb(k) + kb * c.w(k) + kw * kb * c.v(k));
                s.fwbwb[k](i) = e * (c.wbwb(k) + 2.0 * kb * c.wb(k) + kb * kb * c.v(k));
            }
        }
    }
    return s;
}

// Minimum of |F_k| / |F| over a surface chart for affine chart k to be used on all of it.
constexpr double kChartRatio = 0.15;

SurfaceSamples sample_projective(const ImmersionMap& map, const SurfaceDomain& dom) {
    SurfaceSamples s;
    const int n = dom.size();
    resize(s, n);
    std::array<ComponentJet, 3> cj{component_jet(map.core[0], dom), component_jet(map.core[1], dom),
                                   component_jet(map.core[2], dom)};
    auto lift_norm = [&](int k) {
        return std::sqrt(std::norm(cj[0].v(k)) + std::norm(cj[1].v(k)) + std::norm(cj[2].v(k)));
    };

    // Prefer one affine chart per surface chart; fall back to per-node choice.
    for (int c = 0; c < dom.num_charts(); ++c) {
        int best = -1;
        double best_ratio = 0.0;
        for (int a = 0; a < 3; ++a) {
            double worst = 1.0;
            for (int k = 0; k < n; ++k)
                if (dom.node(k).chart == c) worst = std::min(worst, std::abs(cj[a].v(k)) / lift_norm(k));
            if (worst > best_ratio) {
                best_ratio = worst;
                best = a;
            }
        }
        for (int k = 0; k < n; ++k) {
            if (dom.node(k).chart != c) continue;
            if (best_ratio > kChartRatio) {
                s.ambient_chart[k] = best;
            } else {
                int arg = 0;
                for (int a = 1; a < 3; ++a)
                    if (std::abs(cj[a].v(k)) > std::abs(cj[arg].v(k))) arg = a;
                s.ambient_chart[k] = arg;
            }
        }
        if (best_ratio <= kChartRatio) s.frame_continuous = false;
    }

    for (int k = 0; k < n; ++k) {
        const int d = s.ambient_chart[k];
        const ComponentJet& den = cj[d];
        const cplx D = den.v(k);
        const cplx r = 1.0 / D;
        const cplx rw = -den.w(k) / (D * D), rb = -den.wb(k) / (D * D);
        const cplx D3 = D * D * D;
        const cplx rww = -den.ww(k) / (D * D) + 2.0 * den.w(k) * den.w(k) / D3;
        const cplx rwb = -den.wwb(k) / (D * D) + 2.0 * den.w(k) * den.wb(k) / D3;
        const cplx rbb = -den.wbwb(k) / (D * D) + 2.0 * den.wb(k) * den.wb(k) / D3;
        int slot = 0;
        for (int a = 0; a < 3; ++a) {
            if (a == d) continue;
            const ComponentJet& N = cj[a];
            s.f[k](slot) = N.v(k) * r;
            s.fw[k](slot) = N.w(k) * r + N.v(k) * rw;
            s.fwb[k](slot) = N.wb(k) * r + N.v(k) * rb;
            s.fww[k](slot) = N.ww(k) * r + 2.0 * N.w(k) * rw + N.v(k) * rww;
            s.fwwb[k](slot) = N.wwb(k) * r + N.w(k) * rb + N.wb(k) * rw + N.v(k) * rwb;
            s.fwbwb[k](slot) = N.wbwb(k) * r + 2.0 * N.wb(k) * rb + N.v(k) * rbb;
            ++slot;
        }
    }
    return s;
}

}  // namespace

SurfaceSamples sample_jets(const ImmersionMap& map, const SurfaceDomain& dom) {
    const size_t want = map.jump == JumpKind::Projective ? 3 : 2;
    if (map.core.size() != want)
        throw Error(ErrorKind::ConfigError, "immersion: core has the wrong number of components");
    for (const auto& c : map.core)
        if (c.size() != dom.size()) throw Error(ErrorKind::ConfigError, "immersion: core does not match the grid");
    if (dom.kind() == DomainKind::Sphere && map.jump != JumpKind::Projective &&
        (map.jump_s.norm() > 0 || map.jump_t.norm() > 0 || std::abs(map.log_mu_s) > 0 || std::abs(map.log_mu_t) > 0))
        throw Error(ErrorKind::ConfigError, "immersion: lattice jumps need a torus domain");
    return map.jump == JumpKind::Projective ? sample_projective(map, dom) : sample_affine(map, dom);
}

// ---------------------------------------------------------------------------
// Catalogue

namespace {

using ChartFn = std::function<Vec3c(int chart, cplx w)>;

std::vector<GridField> sample_core(const SurfaceDomain& dom, int comps, const ChartFn& fn) {
    std::vector<GridField> core(comps, dom.zeros());
    for (int k = 0; k < dom.size(); ++k) {
        const Node& nd = dom.node(k);
        const Vec3c v = fn(nd.chart, nd.w);
        for (int c = 0; c < comps; ++c) core[c](k) = v(c);
    }
    return core;
}

/// Random trigonometric polynomial in (s, t) of the given degree with zero mean.
std::function<cplx(double, double)> random_trig_poly(std::mt19937& rng, int degree) {
    std::normal_distribution<double> gauss;
    std::vector<std::tuple<int, int, cplx>> modes;
    for (int m = -degree; m <= degree; ++m)
        for (int q = -degree; q <= degree; ++q) {
            if (m == 0 && q == 0) continue;
            const double damp = 1.0 / (1.0 + m * m + q * q);
            modes.emplace_back(m, q, cplx(gauss(rng), gauss(rng)) * damp);
        }
    return [modes](double s, double t) {
        cplx v = 0.0;
        for (const auto& [m, q, c] : modes) v += c * std::exp(2.0 * kPi * kI * (m * s + q * t));
        return v;
    };
}

Mat2c random_unitary(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
    const double a = uni(rng), b = uni(rng), c = uni(rng), th = uni(rng) / 4;
    Mat2c u;
    u << std::polar(std::cos(th), a), -std::polar(std::sin(th), -c), std::polar(std::sin(th), c),
        std::polar(std::cos(th), -a);
    return std::polar(1.0, b) * u;
}

}  // namespace

std::vector<std::string> catalogue_names() {
    return {"slanted-flat-torus", "holomorphic-line", "rational-curve", "clifford-torus",
            "veronese-f1",        "hopf-elliptic",    "random-trig",    "complex-line",
            "harmonic-sphere",    "hopf-flat-torus"};
}

Subject make_subject(const std::string& name, int n, const ImmersionParams& p) {
    if (name == "slanted-flat-torus") {
        if (!(p.slant > 0 && p.slant < 1)) throw Error(ErrorKind::ConfigError, "slanted-flat-torus: need 0 < c < 1");
        const double a = p.lattice_scale;
        SurfaceDomain dom = SurfaceDomain::torus(n, 2 * kPi * a, cplx(0, 2 * kPi * a));
        ImmersionMap m;
        m.name = name;
        m.core = {dom.zeros(), dom.zeros()};
        const double c = p.slant, s = std::sqrt(1 - c * c);
        m.jump_s = Vec2c(c * dom.omega1(), s * std::conj(dom.omega1()));
        m.jump_t = Vec2c(c * dom.omega2(), s * std::conj(dom.omega2()));
        return {name, flat_torus_metric(), dom, m};
    }
    if (name == "complex-line") {
        SurfaceDomain dom = SurfaceDomain::torus(n, 2 * kPi, cplx(0, 2 * kPi));
        ImmersionMap m;
        m.name = name;
        std::mt19937 rng(p.seed);
        auto p1 = random_trig_poly(rng, 2), p2 = random_trig_poly(rng, 2);
        m.core = {dom.zeros(), dom.zeros()};
        for (int k = 0; k < dom.size(); ++k) {
            const Node& nd = dom.node(k);
            m.core[0](k) = p.epsilon * p1(nd.s, nd.t);
            m.core[1](k) = p.epsilon * p2(nd.s, nd.t);
        }
        m.jump_s = Vec2c(dom.omega1(), 0);
        m.jump_t = Vec2c(dom.omega2(), 0);
        return {name, flat_torus_metric(), dom, m};
    }
    if (name == "holomorphic-line" || name == "rational-curve") {
        const int d = name == "holomorphic-line" ? 1 : p.degree;
        if (d < 1) throw Error(ErrorKind::ConfigError, "rational-curve: degree must be positive");
        SurfaceDomain dom = SurfaceDomain::sphere(n);
        ImmersionMap m;
        m.name = name;
        m.jump = JumpKind::Projective;
        if (d == 1) {
            m.core = sample_core(dom, 3, [](int chart, cplx w) {
                return chart == 0 ? Vec3c(1.0, w, 0.0) : Vec3c(w, 1.0, 0.0);
            });
        } else {
            m.core = sample_core(dom, 3, [d](int chart, cplx w) {
                return chart == 0 ? Vec3c(1.0, w, std::pow(w, d)) : Vec3c(std::pow(w, d), std::pow(w, d - 1), 1.0);
            });
        }
        return {name, fubini_study_metric(), dom, m};
    }
    if (name == "veronese-f1") {
        SurfaceDomain dom = SurfaceDomain::sphere(n);
        ImmersionMap m;
        m.name = name;
        m.jump = JumpKind::Projective;
        const double r2 = std::sqrt(2.0);
        m.core = sample_core(dom, 3, [r2](int chart, cplx w) {
            if (chart == 0) return Vec3c(-r2 * std::conj(w), 1.0 - std::norm(w), r2 * w);
            return Vec3c(-r2 * w, std::norm(w) - 1.0, r2 * std::conj(w));
        });
        return {name, fubini_study_metric(), dom, m};
    }
    if (name == "harmonic-sphere") {
        // ∂-transform of F = (1, w^d, c w^{d+1}): the line conj(F) × W with W
        // spanning F' × F. For d ≥ 2, F is ramified at 0 and inflected at infinity, so
        // the transform is immersed with singular points at both poles; c
        // balances the size of the two singular regions.
        const int d = p.degree;
        if (d < 1) throw Error(ErrorKind::ConfigError, "harmonic-sphere: degree must be positive");
        const double c = std::sqrt(2.0) / 3.0;
        SurfaceDomain dom = SurfaceDomain::sphere(n);
        ImmersionMap m;
        m.name = name;
        m.jump = JumpKind::Projective;
        m.core = sample_core(dom, 3, [d, c](int chart, cplx w) {
            const double dd = d;
            Vec3c f, wv;
            if (chart == 0) {
                f = Vec3c(1.0, std::pow(w, d), c * std::pow(w, d + 1));
                wv = Vec3c(-c * std::pow(w, d + 1), c * (dd + 1) * w, -dd);
            } else {
                f = Vec3c(std::pow(w, d + 1), w, c);
                wv = Vec3c(c, -c * (dd + 1) * std::pow(w, d), dd * std::pow(w, d + 1));
            }
            return Vec3c(f.conjugate().cross(wv));
        });
        return {name, fubini_study_metric(), dom, m};
    }
    if (name == "clifford-torus") {
        // Equilateral lattice: the flat metric of the Clifford torus in CP^2 is hexagonal.
        const cplx o1 = 2 * kPi;
        const cplx o2 = o1 * std::polar(1.0, 2 * kPi / 3);
        SurfaceDomain dom = SurfaceDomain::torus(n, o1, o2);
        ImmersionMap m;
        m.name = name;
        m.jump = JumpKind::Projective;
        m.core = {dom.zeros(), dom.zeros(), dom.zeros()};
        for (int k = 0; k < dom.size(); ++k) {
            const Node& nd = dom.node(k);
            m.core[0](k) = std::exp(2.0 * kPi * kI * nd.s);
            m.core[1](k) = std::exp(2.0 * kPi * kI * nd.t);
            m.core[2](k) = 1.0;
        }
        return {name, fubini_study_metric(), dom, m};
    }
    if (name == "hopf-flat-torus") {
        // (r1 e^{ix/r1}, r2 e^{iy/r2}) on the unit sphere, where the Hopf metric
        // is the round one; not minimal unless r1 = r2
        const double r1 = p.radius;
        if (!(r1 > 0 && r1 < 1)) throw Error(ErrorKind::ConfigError, "hopf-flat-torus: need 0 < r < 1");
        const double r2 = std::sqrt(1 - r1 * r1);
        SurfaceDomain dom = SurfaceDomain::torus(n, 2 * kPi * r1, cplx(0, 2 * kPi * r2));
        ImmersionMap m;
        m.name = name;
        m.core = {dom.zeros(), dom.zeros()};
        for (int k = 0; k < dom.size(); ++k) {
            const cplx w = dom.node(k).w;
            m.core[0](k) = r1 * std::exp(kI * w.real() / r1);
            m.core[1](k) = r2 * std::exp(kI * w.imag() / r2);
        }
        return {name, hopf_metric(), dom, m};
    }
    if (name == "hopf-elliptic" || name == "random-trig") {
        SurfaceDomain dom = SurfaceDomain::torus(n, std::log(2.0), cplx(0, 2 * kPi));
        ImmersionMap m;
        m.name = name;
        m.jump = JumpKind::Multiplicative;
        m.log_mu_s = std::log(2.0);
        m.core = {dom.zeros(), dom.zeros()};
        if (name == "hopf-elliptic") {
            for (int k = 0; k < dom.size(); ++k) m.core[0](k) = std::exp(2.0 * kPi * kI * dom.node(k).t);
        } else {
            std::mt19937 rng(p.seed);
            std::uniform_real_distribution<double> mod(0.5, 1.5), arg(0.0, 2 * kPi);
            const Mat2c u = random_unitary(rng);
            const cplx c1 = std::polar(mod(rng), arg(rng)), c2 = std::polar(mod(rng), arg(rng));
            auto p1 = random_trig_poly(rng, p.trig_degree), p2 = random_trig_poly(rng, p.trig_degree);
            for (int k = 0; k < dom.size(); ++k) {
                const Node& nd = dom.node(k);
                const cplx ph = std::exp(2.0 * kPi * kI * nd.t);
                const Vec2c v(ph * (c1 + p.epsilon * p1(nd.s, nd.t)), (1.0 / ph) * (c2 + p.epsilon * p2(nd.s, nd.t)));
                const Vec2c uv = u * v;
                m.core[0](k) = uv(0);
                m.core[1](k) = uv(1);
            }
        }
        return {name, hopf_metric(), dom, m};
    }
    throw Error(ErrorKind::ConfigError, "unknown immersion '" + name + "'");
}

// ---------------------------------------------------------------------------
// Pullback and jets

GridField component(const std::vector<Vec2c>& v, int i) {
    GridField g(static_cast<int>(v.size()));
    for (size_t k = 0; k < v.size(); ++k) g(static_cast<int>(k)) = v[k](i);
    return g;
}

double max_norm(const std::vector<Vec2c>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, x.norm());
    return m;
}

Mat2c PullbackJet::connection_on(int k, bool wbar) const {
    const Vec4c on = wbar ? on_wb(k) : on_w(k);
    Mat2c m = Mat2c::Zero();
    for (int b = 0; b < 4; ++b) m += frames[k].connection[b] * on(b);
    return m;
}

PullbackJet pullback(const ImmersionMap& map, const SurfaceDomain& dom, const MetricField& metric,
                     double conformal_tol) {
    PullbackJet jet;
    jet.samples = sample_jets(map, dom);
    const int n = dom.size();
    jet.frames.resize(n);
    jet.christoffel.resize(n);
    jet.lambda.resize(n);
    jet.a1.resize(n);
    jet.a1b.resize(n);
    jet.conformality.resize(n);
    jet.isometry.resize(n);
    for (int k = 0; k < n; ++k) {
        const ChartPoint& f = jet.samples.f[k];
        if (!metric.chart().contains(f))
            throw Error(ErrorKind::DerivativeUnavailable, "immersion: image leaves the ambient chart");
        jet.frames[k] = chern_connection(metric, f);
        jet.christoffel[k] = holomorphic_christoffel(metric.jet(f));
        const Mat2c& a = jet.frames[k].coframe;
        const Vec2c u = a * jet.samples.fw[k], v = a * jet.samples.fwb[k];
        const double l2 = u.squaredNorm() + v.squaredNorm();
        // Rank of df: the real vectors f_x, f_y must span a plane.
        const Mat4d g = real_metric(metric.eval(f));
        const Vec2c fx = jet.samples.fw[k] + jet.samples.fwb[k];
        const Vec2c fy = kI * (jet.samples.fw[k] - jet.samples.fwb[k]);
        auto realify = [](const Vec2c& z) { return to_real(z); };
        const Vec4d x = realify(fx), y = realify(fy);
        const double gxx = x.dot(g * x), gyy = y.dot(g * y), gxy = x.dot(g * y);
        if (!(l2 > 1e-20) || gxx * gyy - gxy * gxy < 1e-10 * gxx * gyy)
            throw Error(ErrorKind::NotImmersive, "immersion: differential drops rank");
        const double lam = std::sqrt(l2);
        jet.lambda(k) = lam;
        jet.a1[k] = u / lam;
        jet.a1b[k] = v / lam;
        jet.conformality(k) = std::abs(jet.a1[k].dot(jet.a1b[k]));  // Eigen dot conjugates the first factor
        jet.isometry(k) = std::abs(jet.a1[k].squaredNorm() + jet.a1b[k].squaredNorm() - 1.0);
    }
    jet.max_conformality = jet.conformality.maxCoeff();
    jet.conformal = jet.max_conformality <= conformal_tol;
    const GridField lam = jet.lambda.cast<cplx>();
    jet.lambda_w = dom.deriv(lam, Direction::W);
    jet.lambda_wb = dom.deriv(lam, Direction::WBar);
    return jet;
}

void covariant_jet(PullbackJet& jet, const MetricField&, const SurfaceDomain&) {
    const int n = jet.size();
    auto& s = jet.second;
    s.a11.resize(n);
    s.a11b.resize(n);
    s.a1b1.resize(n);
    s.a1b1b.resize(n);
    for (int k = 0; k < n; ++k) {
        const auto& c = jet.christoffel[k];
        auto gamma = [&](const Vec2c& u, const Vec2c& v) {
            Vec2c r = Vec2c::Zero();
            for (int m = 0; m < 2; ++m) r += c[m].transpose() * u * v(m);
            return r;
        };
        const SurfaceSamples& sm = jet.samples;
        const Mat2c& a = jet.frames[k].coframe;
        const double l2 = jet.lambda(k) * jet.lambda(k);
        s.a11[k] = a * (sm.fww[k] + gamma(sm.fw[k], sm.fw[k])) / l2 - 2.0 * jet.a1[k] * jet.lambda_w(k) / l2;
        s.a11b[k] = a * (sm.fwwb[k] + gamma(sm.fw[k], sm.fwb[k])) / l2;
        s.a1b1[k] = a * (sm.fwwb[k] + gamma(sm.fwb[k], sm.fw[k])) / l2;
        s.a1b1b[k] = a * (sm.fwbwb[k] + gamma(sm.fwb[k], sm.fwb[k])) / l2 - 2.0 * jet.a1b[k] * jet.lambda_wb(k) / l2;
    }
    jet.has_second = true;
}

namespace {

/// Covariant differential of a vector field v with weight q·(−iρ):
/// returns the (φ, φ̄) coefficients as a pair of vector fields.
std::pair<std::vector<Vec2c>, std::vector<Vec2c>> covariant_differential(const PullbackJet& jet,
                                                                         const SurfaceDomain& dom,
                                                                         const std::vector<Vec2c>& v, double q) {
    const int n = jet.size();
    std::array<GridField, 2> dw, db;
    for (int i = 0; i < 2; ++i) {
        const GridField c = component(v, i);
        dw[i] = dom.deriv(c, Direction::W);
        db[i] = dom.deriv(c, Direction::WBar);
    }
    std::vector<Vec2c> on_phi(n), on_phibar(n);
    for (int k = 0; k < n; ++k) {
        const double lam = jet.lambda(k);
        // −iρ = −(log λ)_w dw + (log λ)_w̄ dw̄
        const cplx rho_w = -jet.lambda_w(k) / lam, rho_b = jet.lambda_wb(k) / lam;
        const Vec2c vw(dw[0](k), dw[1](k)), vb(db[0](k), db[1](k));
        on_phi[k] = (vw + q * rho_w * v[k] + jet.connection_on(k, false) * v[k]) / lam;
        on_phibar[k] = (vb + q * rho_b * v[k] + jet.connection_on(k, true) * v[k]) / lam;
    }
    return {on_phi, on_phibar};
}

void require_continuous(const PullbackJet& jet) {
    if (!jet.samples.frame_continuous)
        throw Error(ErrorKind::DerivativeUnavailable,
                    "immersion: frame fields along f are not continuous on a surface chart");
}

}  // namespace

SecondOrder covariant_jet_frame(const PullbackJet& jet, const SurfaceDomain& dom) {
    require_continuous(jet);
    SecondOrder s;
    auto d1 = covariant_differential(jet, dom, jet.a1, 1.0);
    auto d1b = covariant_differential(jet, dom, jet.a1b, -1.0);
    s.a11 = std::move(d1.first);
    s.a11b = std::move(d1.second);
    s.a1b1 = std::move(d1b.first);
    s.a1b1b = std::move(d1b.second);
    return s;
}

std::vector<Vec2c> chern_mean_curvature(const PullbackJet& jet) {
    if (!jet.has_second) throw Error(ErrorKind::ConfigError, "immersion: second-order jet missing");
    std::vector<Vec2c> h(jet.size());
    for (int k = 0; k < jet.size(); ++k) h[k] = jet.second.a11b[k] + jet.second.a1b1[k];
    return h;
}

std::vector<Vec2c> lc_mean_curvature(const PullbackJet& jet) {
    std::vector<Vec2c> h = chern_mean_curvature(jet);
    for (int k = 0; k < jet.size(); ++k) {
        const Torsion& L = jet.frames[k].torsion;
        const Vec2c& a = jet.a1[k];
        const Vec2c& b = jet.a1b[k];
        for (int i = 0; i < 2; ++i) {
            cplx t = 0.0;
            for (int j = 0; j < 2; ++j)
                for (int m = 0; m < 2; ++m)
                    t += b(j) * std::conj(L(j, m, i)) * std::conj(b(m)) + std::conj(a(j)) * std::conj(L(m, j, i)) * a(m);
            h[k](i) += 2.0 * t;
        }
    }
    return h;
}

std::vector<Vec2c> lc_mean_curvature_tension(const PullbackJet& jet, const MetricField& metric) {
    const SurfaceSamples& s = jet.samples;
    std::vector<Vec2c> h(jet.size());
    for (int k = 0; k < jet.size(); ++k) {
        const RealChristoffel rc = real_christoffel(metric, s.f[k]);
        const Vec4d fx = to_real(s.fw[k] + s.fwb[k]);
        const Vec4d fy = to_real(kI * (s.fw[k] - s.fwb[k]));
        const Vec2c fxx_c = s.fww[k] + 2.0 * s.fwwb[k] + s.fwbwb[k];
        const Vec2c fyy_c = -s.fww[k] + 2.0 * s.fwwb[k] - s.fwbwb[k];
        Vec4d tau = to_real(fxx_c + fyy_c);
        for (int c = 0; c < 4; ++c) tau(c) += fx.dot(rc.christoffel[c] * fx) + fy.dot(rc.christoffel[c] * fy);
        const Vec2c tc = from_real(tau);
        const double l2 = jet.lambda(k) * jet.lambda(k);
        h[k] = jet.frames[k].coframe * tc / (2.0 * l2);
    }
    return h;
}

Eigen::VectorXd cartan_residual(const PullbackJet& jet, const SecondOrder& second) {
    Eigen::VectorXd r(jet.size());
    for (int k = 0; k < jet.size(); ++k) {
        const Vec2c& a = jet.a1[k];
        const Vec2c& b = jet.a1b[k];
        const Vec2c rhs = 2.0 * jet.frames[k].torsion.l12 * (a(0) * b(1) - a(1) * b(0));
        r(k) = (-second.a11b[k] + second.a1b1[k] - rhs).cwiseAbs().maxCoeff();
    }
    return r;
}

std::pair<double, double> check_ricci_identities(const PullbackJet& jet, const MetricField& metric,
                                                 const SurfaceDomain& dom) {
    require_continuous(jet);
    if (!jet.has_second) throw Error(ErrorKind::ConfigError, "immersion: second-order jet missing");
    const SecondOrder& s = jet.second;
    const auto d11 = covariant_differential(jet, dom, s.a11, 2.0);
    const auto d11b = covariant_differential(jet, dom, s.a11b, 0.0);
    const auto d1b1 = covariant_differential(jet, dom, s.a1b1, 0.0);
    const auto d1b1b = covariant_differential(jet, dom, s.a1b1b, -2.0);

    // Frame-normalized curvature: dρ = −i K φ∧φ̄, so K = −2 (log λ)_{ww̄} / λ².
    GridField loglam(jet.size());
    for (int k = 0; k < jet.size(); ++k) loglam(k) = std::log(jet.lambda(k));
    const GridField ll = dom.deriv(dom.deriv(loglam, Direction::W), Direction::WBar);

    double r1 = 0.0, r2 = 0.0;
    for (int k = 0; k < jet.size(); ++k) {
        if (!dom.active(k)) continue;
        const double l2 = jet.lambda(k) * jet.lambda(k);
        const double kp = -2.0 * ll(k).real() / l2;
        const FramePacket fp = chern_curvature(metric, jet.samples.f[k]);
        Mat2c om;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) om(i, j) = pullback_2form(fp.curvature[i][j], jet.on_w(k), jet.on_wb(k)) / l2;
        // Frames along f may be re-gauged relative to the ambient evaluation; they coincide here.
        const Vec2c lhs1 = d11b.first[k] - d11.second[k];
        const Vec2c rhs1 = -kp * jet.a1[k] + om * jet.a1[k];
        const Vec2c lhs2 = d1b1b.first[k] - d1b1.second[k];
        const Vec2c rhs2 = kp * jet.a1b[k] + om * jet.a1b[k];
        r1 = std::max(r1, (lhs1 - rhs1).cwiseAbs().maxCoeff());
        r2 = std::max(r2, (lhs2 - rhs2).cwiseAbs().maxCoeff());
    }
    return {r1, r2};
}

PullbackJet full_jet(const Subject& subject, double conformal_tol) {
    PullbackJet jet = pullback(subject.map, subject.domain, subject.metric, conformal_tol);
    covariant_jet(jet, subject.metric, subject.domain);
    return jet;
}

}  // namespace hermsurf
