#include "hermsurf/domain.hpp"

#include "hermsurf/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <string>

namespace hermsurf {

struct SurfaceDomain::Fft {
    int n;
    fftw_complex* buf;
    fftw_plan forward;
    fftw_plan backward;

    explicit Fft(int size) : n(size) {
        buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
        forward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(buf);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
};

double smooth_step(double t) {
    if (t <= 0) return 0.0;
    if (t >= 1) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double north_weight(double abs_w) {
    if (abs_w <= 0) return 1.0;
    const double lo = std::log(0.8), hi = std::log(1.25);
    return 1.0 - smooth_step((std::log(abs_w) - lo) / (hi - lo));
}

SurfaceDomain SurfaceDomain::torus(int n, cplx omega1, cplx omega2) {
    if (n < 8) throw Error(ErrorKind::ConfigError, "domain: torus grid must have at least 8 nodes per side");
    const double area = std::abs((std::conj(omega1) * omega2).imag());
    if (area < 1e-12) throw Error(ErrorKind::ConfigError, "domain: degenerate lattice");
    SurfaceDomain d;
    d.kind_ = DomainKind::Torus;
    d.n_ = n;
    d.omega1_ = omega1;
    d.omega2_ = omega2;
    d.nodes_.reserve(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Node nd;
            nd.i = i;
            nd.j = j;
            nd.s = static_cast<double>(i) / n;
            nd.t = static_cast<double>(j) / n;
            nd.w = nd.s * omega1 + nd.t * omega2;
            nd.weight = area / (static_cast<double>(n) * n);
            d.nodes_.push_back(nd);
        }
    d.fft_ = std::make_shared<Fft>(n);
    return d;
}

SurfaceDomain SurfaceDomain::sphere(int n) {
    if (n < 16) throw Error(ErrorKind::ConfigError, "domain: sphere grid must have at least 16 nodes per side");
    SurfaceDomain d;
    d.kind_ = DomainKind::Sphere;
    d.n_ = n;
    d.h_ = 2 * d.half_width_ / (n - 1);
    d.nodes_.reserve(2 * static_cast<size_t>(n) * n);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Node nd;
                nd.chart = c;
                nd.i = i;
                nd.j = j;
                nd.w = cplx(-d.half_width_ + i * d.h_, -d.half_width_ + j * d.h_);
                const double psi = north_weight(std::abs(nd.w));
                nd.weight = (c == 0 ? psi : 1.0 - north_weight(std::abs(nd.w) > 0 ? 1.0 / std::abs(nd.w) : 1e300)) *
                            d.h_ * d.h_;
                d.nodes_.push_back(nd);
            }
    return d;
}

double SurfaceDomain::cell_size() const {
    if (kind_ == DomainKind::Sphere) return h_;
    // Height of the fundamental cell relative to each generator bounds the spacing.
    return std::min(std::abs(omega1_), std::abs(omega2_)) / n_;
}

bool SurfaceDomain::owns(int k) const {
    if (kind_ == DomainKind::Torus) return true;
    const Node& nd = nodes_[k];
    return nd.chart == 0 ? std::abs(nd.w) <= 1.0 : std::abs(nd.w) < 1.0;
}

GridField SurfaceDomain::deriv(const GridField& f, Direction d) const {
    if (f.size() != size()) throw Error(ErrorKind::ConfigError, "domain: field size does not match the grid");
    return kind_ == DomainKind::Torus ? torus_deriv(f, d) : chart_fd_deriv(f, d);
}

GridField SurfaceDomain::torus_deriv(const GridField& f, Direction d) const {
    const int n = n_;
    Fft& fft = *fft_;
    auto* buf = reinterpret_cast<cplx*>(fft.buf);
    for (int k = 0; k < n * n; ++k) buf[k] = f(k);
    fftw_execute(fft.forward);
    // ∂_w = (ω̄2 ∂_s − ω̄1 ∂_t)/det and ∂_w̄ = (−ω2 ∂_s + ω1 ∂_t)/det with det = ω1 ω̄2 − ω̄1 ω2.
    const cplx det = omega1_ * std::conj(omega2_) - std::conj(omega1_) * omega2_;
    const cplx cs = d == Direction::W ? std::conj(omega2_) / det : -omega2_ / det;
    const cplx ct = d == Direction::W ? -std::conj(omega1_) / det : omega1_ / det;
    auto freq = [n](int k) { return k <= n / 2 ? k : k - n; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int ki = freq(i), kj = freq(j);
            const bool nyq = (n % 2 == 0) && (i == n / 2 || j == n / 2);
            const cplx mult = nyq ? 0.0 : kI * 2.0 * kPi * (cs * double(ki) + ct * double(kj));
            buf[j * n + i] *= mult / double(n * n);
        }
    fftw_execute(fft.backward);
    GridField out(n * n);
    for (int k = 0; k < n * n; ++k) out(k) = buf[k];
    return out;
}

GridField SurfaceDomain::chart_fd_deriv(const GridField& f, Direction d) const {
    const int n = n_;
    GridField out(size());
    const double inv = 1.0 / (12.0 * h_);
    auto d1 = [&](auto&& at, int i) -> cplx {
        if (i >= 2 && i <= n - 3) return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) * inv;
        if (i == 0) return (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * inv;
        if (i == 1) return (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * inv;
        if (i == n - 2)
            return (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) - at(n - 5)) * inv;
        return (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) + 3.0 * at(n - 5)) * inv;
    };
    const cplx sy = d == Direction::W ? -0.5 * kI : 0.5 * kI;
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const cplx dx = d1([&](int ii) { return f(index(c, ii, j)); }, i);
                const cplx dy = d1([&](int jj) { return f(index(c, i, jj)); }, j);
                out(index(c, i, j)) = 0.5 * dx + sy * dy;
            }
    return out;
}

GridField SurfaceDomain::laplacian(const GridField& f) const {
    return 4.0 * deriv(deriv(f, Direction::W), Direction::WBar);
}

GridField SurfaceDomain::laplacian(const GridField& f, const Eigen::VectorXd& lambda) const {
    if (lambda.size() != size()) throw Error(ErrorKind::ConfigError, "domain: conformal factor size mismatch");
    for (int k = 0; k < size(); ++k)
        if (active(k) && !(lambda(k) >= 1e-10))
            throw Error(ErrorKind::DegenerateConformalFactor, "domain: conformal factor vanishes at node " +
                                                                  std::to_string(k));
    GridField out = laplacian(f);
    for (int k = 0; k < size(); ++k) out(k) /= lambda(k) * lambda(k);
    return out;
}

cplx SurfaceDomain::integrate(const GridField& f, const Eigen::VectorXd& lambda) const {
    cplx s = 0.0;
    for (int k = 0; k < size(); ++k) s += nodes_[k].weight * lambda(k) * lambda(k) * f(k);
    return s;
}

GridField SurfaceDomain::deriv_local(const GridField& f, Direction d) const {
    if (f.size() != size()) throw Error(ErrorKind::ConfigError, "domain: field size does not match the grid");
    return kind_ == DomainKind::Torus ? torus_fd_deriv(f, d) : chart_fd_deriv(f, d);
}

GridField SurfaceDomain::torus_fd_deriv(const GridField& f, Direction d) const {
    const int n = n_;
    const cplx det = omega1_ * std::conj(omega2_) - std::conj(omega1_) * omega2_;
    const cplx cs = d == Direction::W ? std::conj(omega2_) / det : -omega2_ / det;
    const cplx ct = d == Direction::W ? -std::conj(omega1_) / det : omega1_ / det;
    auto at = [&](int i, int j) { return f(((j + n) % n) * n + (i + n) % n); };
    GridField out(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const cplx ds = (-at(i + 2, j) + 8.0 * at(i + 1, j) - 8.0 * at(i - 1, j) + at(i - 2, j)) * (n / 12.0);
            const cplx dt = (-at(i, j + 2) + 8.0 * at(i, j + 1) - 8.0 * at(i, j - 1) + at(i, j - 2)) * (n / 12.0);
            out(j * n + i) = cs * ds + ct * dt;
        }
    return out;
}

cplx SurfaceDomain::integrate(const GridField& f) const {
    cplx s = 0.0;
    for (int k = 0; k < size(); ++k) s += nodes_[k].weight * f(k);
    return s;
}

void SurfaceDomain::fractional_index(cplx w, double& fi, double& fj) const {
    if (kind_ == DomainKind::Torus) {
        // Solve w = s ω1 + t ω2 over the reals.
        const double a = omega1_.real(), b = omega2_.real(), c = omega1_.imag(), e = omega2_.imag();
        const double det = a * e - b * c;
        const double s = (e * w.real() - b * w.imag()) / det;
        const double t = (-c * w.real() + a * w.imag()) / det;
        fi = s * n_;
        fj = t * n_;
    } else {
        fi = (w.real() + half_width_) / h_;
        fj = (w.imag() + half_width_) / h_;
    }
}

double SurfaceDomain::interpolate(const Eigen::VectorXd& f, int chart, cplx w) const {
    double fi, fj;
    fractional_index(w, fi, fj);
    const int i0 = static_cast<int>(std::floor(fi)), j0 = static_cast<int>(std::floor(fj));
    const double u = fi - i0, v = fj - j0;
    auto wrap = [&](int k) {
        if (kind_ == DomainKind::Torus) return ((k % n_) + n_) % n_;
        return std::clamp(k, 0, n_ - 1);
    };
    auto weights = [](double x) {
        return std::array<double, 4>{0.5 * (-x + 2 * x * x - x * x * x), 0.5 * (2 - 5 * x * x + 3 * x * x * x),
                                     0.5 * (x + 4 * x * x - 3 * x * x * x), 0.5 * (-x * x + x * x * x)};
    };
    const auto wu = weights(u), wv = weights(v);
    double s = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) s += wu[a] * wv[b] * f(index(chart, wrap(i0 - 1 + a), wrap(j0 - 1 + b)));
    return s;
}

double SurfaceDomain::winding_flux(const GridField& f, int chart, cplx w0, double radius_cells) const {
    const int samples = 64;
    const double r = radius_cells * cell_size();
    const double delta = 0.5 * cell_size();
    Eigen::VectorXd logmag(size());
    for (int k = 0; k < size(); ++k) logmag(k) = std::log(std::max(std::abs(f(k)), 1e-300));

    // Reject circles that come close to a zero of F.
    for (int k = 0; k < size(); ++k) {
        const Node& nd = nodes_[k];
        if (nd.chart != chart) continue;
        const double dist = distance(chart, nd.w, w0);
        if (std::abs(dist - r) < 1.5 * cell_size() && std::abs(f(k)) < 1e-8)
            throw Error(ErrorKind::CircleThroughZero, "angle: flux circle passes through a zero");
    }
    double sum = 0.0;
    for (int m = 0; m < samples; ++m) {
        const double th = 2 * kPi * m / samples;
        const cplx dir = std::polar(1.0, th);
        const double outer = interpolate(logmag, chart, w0 + (r + delta) * dir);
        const double inner = interpolate(logmag, chart, w0 + (r - delta) * dir);
        sum += (outer - inner) / (2 * delta) * r * (2 * kPi / samples);
    }
    return sum / (2 * kPi);
}

double SurfaceDomain::distance(int, cplx a, cplx b) const {
    if (kind_ == DomainKind::Sphere) return std::abs(a - b);
    double best = 1e300;
    for (int m = -1; m <= 1; ++m)
        for (int k = -1; k <= 1; ++k) best = std::min(best, std::abs(a - b + double(m) * omega1_ + double(k) * omega2_));
    return best;
}

}  // namespace hermsurf
