#include "hermsurf/flow.hpp"

#include "hermsurf/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace hermsurf {

namespace {

struct Mode {
    int ks, kt, plane;
    cplx part;
};

std::vector<Mode> modes(const FlowConfig& config) {
    std::vector<Mode> out;
    for (int kt = -config.band; kt <= config.band; ++kt)
        for (int ks = -config.band; ks <= config.band; ++ks) {
            if (ks == 0 && kt == 0) continue;
            for (int plane = 0; plane < 2; ++plane) {
                out.push_back({ks, kt, plane, 1.0});
                out.push_back({ks, kt, plane, kI});
            }
        }
    return out;
}

void require_torus(const ImmersionMap& map, const SurfaceDomain& dom) {
    if (dom.kind() != DomainKind::Torus || map.jump != JumpKind::Additive)
        throw Error(ErrorKind::ConfigError, "flow: only additive torus maps are supported");
}

double objective(const ImmersionMap& map, const MetricField& metric, const SurfaceDomain& dom, double beta) {
    const Energy e = energy(map, metric, dom);
    return e.energy + beta * e.penalty;
}

}  // namespace

int mode_count(const FlowConfig& config) { return static_cast<int>(modes(config).size()); }

Energy energy(const ImmersionMap& map, const MetricField& metric, const SurfaceDomain& dom) {
    PullbackJet jet = pullback(map, dom, metric, std::numeric_limits<double>::infinity());
    covariant_jet(jet, metric, dom);
    const auto h = chern_mean_curvature(jet);
    GridField e(dom.size()), p(dom.size());
    for (int k = 0; k < dom.size(); ++k) {
        e(k) = h[k].squaredNorm();
        p(k) = jet.conformality(k) * jet.conformality(k);
    }
    return {dom.integrate(e, jet.lambda).real(), dom.integrate(p, jet.lambda).real()};
}

ImmersionMap perturb_modes(const ImmersionMap& map, const SurfaceDomain& dom, const FlowConfig& config,
                           const Eigen::VectorXd& coeff) {
    const auto ms = modes(config);
    ImmersionMap out = map;
    for (size_t m = 0; m < ms.size(); ++m) {
        if (coeff(m) == 0.0) continue;
        const Mode& md = ms[m];
        for (int k = 0; k < dom.size(); ++k) {
            const Node& nd = dom.node(k);
            out.core[md.plane](k) += coeff(m) * md.part * std::polar(1.0, 2 * kPi * (md.ks * nd.s + md.kt * nd.t));
        }
    }
    return out;
}

Eigen::VectorXd objective_gradient(const ImmersionMap& map, const MetricField& metric, const SurfaceDomain& dom,
                                   const FlowConfig& config, double base) {
    const int m = mode_count(config);
    Eigen::VectorXd g(m);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
        e(i) = config.fd_step;
        g(i) = (objective(perturb_modes(map, dom, config, e), metric, dom, config.beta) - base) / config.fd_step;
        e(i) = 0.0;
    }
    return g;
}

FlowState minimize(const ImmersionMap& seed, const MetricField& metric, const SurfaceDomain& dom,
                   const FlowConfig& config) {
    require_torus(seed, dom);
    if (!(config.beta > 0)) throw Error(ErrorKind::ConfigError, "flow: beta must be positive");
    FlowState st;
    st.map = seed;
    Energy e = energy(seed, metric, dom);
    st.energy = e.energy;
    st.penalty = e.penalty;
    st.step = config.initial_step;
    st.history.push_back({st.energy, st.penalty, 0.0});
    if (st.energy < config.stationary_energy) return st;

    const auto ms = modes(config);
    Eigen::VectorXd precond(ms.size());
    for (size_t i = 0; i < ms.size(); ++i) {
        const double k2 = ms[i].ks * ms[i].ks + ms[i].kt * ms[i].kt;
        precond(i) = 1.0 / ((1.0 + k2) * (1.0 + k2));
    }

    for (int it = 0; it < config.max_iter; ++it) {
        const double obj = st.objective(config.beta);
        if (obj < config.objective_tol) break;
        const Eigen::VectorXd g = objective_gradient(st.map, metric, dom, config, obj);
        const Eigen::VectorXd dir = -precond.cwiseProduct(g);
        const double slope = g.dot(dir);
        st.grad_norm = std::sqrt(-slope);
        if (st.grad_norm < config.grad_tol) break;

        double t = st.step;
        bool accepted = false;
        for (int halving = 0; halving <= config.max_halvings; ++halving, t *= 0.5) {
            const ImmersionMap trial = perturb_modes(st.map, dom, config, t * dir);
            Energy et;
            try {
                et = energy(trial, metric, dom);
            } catch (const Error& err) {
                if (err.kind() == ErrorKind::NotImmersive) continue;
                throw;
            }
            const double val = et.energy + config.beta * et.penalty;
            if (val < obj && val <= obj + 1e-4 * t * slope) {
                st.map = trial;
                st.energy = et.energy;
                st.penalty = et.penalty;
                st.history.push_back({st.energy, st.penalty, t});
                ++st.iterations;
                st.step = std::min(2 * t, 1e3);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            st.stalled = true;
            break;
        }
    }
    return st;
}

namespace {

template <class T>
void put(std::ostream& os, T v) {
    static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes a little-endian host");
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw Error(ErrorKind::IoError, "flow: truncated plane file");
    return v;
}

}  // namespace

void write_planes(const std::string& path, const PlaneFile& file) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::IoError, "flow: cannot write " + path);
    os.write("HSCP", 4);
    put<std::uint32_t>(os, 1);
    put<std::uint32_t>(os, file.nx);
    put<std::uint32_t>(os, file.ny);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(file.planes.size()));
    for (const auto& p : file.planes) {
        if (p.size() != static_cast<Eigen::Index>(file.nx) * file.ny)
            throw Error(ErrorKind::IoError, "flow: plane size does not match header");
        for (Eigen::Index k = 0; k < p.size(); ++k) put<double>(os, p(k));
    }
    if (!os) throw Error(ErrorKind::IoError, "flow: write failed for " + path);
}

PlaneFile read_planes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::MissingDump, "flow: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "HSCP", 4) != 0) throw Error(ErrorKind::IoError, "flow: bad magic in " + path);
    if (get<std::uint32_t>(is) != 1) throw Error(ErrorKind::IoError, "flow: unsupported version in " + path);
    PlaneFile f;
    f.nx = static_cast<int>(get<std::uint32_t>(is));
    f.ny = static_cast<int>(get<std::uint32_t>(is));
    const auto count = get<std::uint32_t>(is);
    if (f.nx <= 0 || f.ny <= 0 || count > 64) throw Error(ErrorKind::IoError, "flow: bad header in " + path);
    for (std::uint32_t p = 0; p < count; ++p) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(f.nx) * f.ny);
        for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = get<double>(is);
        f.planes.push_back(std::move(v));
    }
    return f;
}

void save_checkpoint(const std::string& path, const FlowState& state, const SurfaceDomain& dom) {
    require_torus(state.map, dom);
    PlaneFile f;
    f.nx = dom.resolution();
    f.ny = dom.resolution();
    f.planes.assign(4, Eigen::VectorXd(dom.size()));
    for (int k = 0; k < dom.size(); ++k) {
        const Node& nd = dom.node(k);
        for (int c = 0; c < 2; ++c) {
            const cplx v = state.map.core[c](k) + state.map.jump_s(c) * nd.s + state.map.jump_t(c) * nd.t;
            f.planes[2 * c](k) = v.real();
            f.planes[2 * c + 1](k) = v.imag();
        }
    }
    write_planes(path, f);
}

ImmersionMap load_checkpoint(const std::string& path, const ImmersionMap& like, const SurfaceDomain& dom) {
    require_torus(like, dom);
    const PlaneFile f = read_planes(path);
    if (f.nx != dom.resolution() || f.ny != dom.resolution() || f.planes.size() != 4)
        throw Error(ErrorKind::IoError, "flow: checkpoint does not match the grid");
    ImmersionMap m = like;
    for (int k = 0; k < dom.size(); ++k) {
        const Node& nd = dom.node(k);
        for (int c = 0; c < 2; ++c)
            m.core[c](k) = cplx(f.planes[2 * c](k), f.planes[2 * c + 1](k)) - like.jump_s(c) * nd.s -
                           like.jump_t(c) * nd.t;
    }
    return m;
}

}  // namespace hermsurf
