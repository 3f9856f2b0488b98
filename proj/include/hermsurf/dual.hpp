#pragma once

#include "hermsurf/types.hpp"

#include <cmath>

namespace hermsurf {

/// Complex value carrying exact first partials with respect to the four real
/// chart coordinates (x1, y1, x2, y2). Used to evaluate metric formulas and
/// custom metric expressions with analytic first derivatives.
struct Dual {
    cplx v{};
    std::array<cplx, 4> d{};

    Dual() = default;
    Dual(double x) : v(x) {}  // NOLINT(google-explicit-constructor)
    Dual(cplx x) : v(x) {}    // NOLINT(google-explicit-constructor)

    static Dual variable(cplx value, int axis, cplx seed = 1.0) {
        Dual r(value);
        r.d[axis] = seed;
        return r;
    }

    Dual& operator+=(const Dual& o) {
        v += o.v;
        for (int a = 0; a < 4; ++a) d[a] += o.d[a];
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        for (int a = 0; a < 4; ++a) d[a] -= o.d[a];
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        for (int a = 0; a < 4; ++a) d[a] = d[a] * o.v + v * o.d[a];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        const cplx inv = 1.0 / o.v;
        for (int a = 0; a < 4; ++a) d[a] = (d[a] - v * inv * o.d[a]) * inv;
        v *= inv;
        return *this;
    }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return Dual(0.0) - a; }

namespace detail {
template <class F, class G>
Dual chain(const Dual& x, F&& value, G&& derivative) {
    Dual r(value(x.v));
    const cplx fp = derivative(x.v);
    for (int a = 0; a < 4; ++a) r.d[a] = fp * x.d[a];
    return r;
}
}  // namespace detail

inline Dual conj(const Dual& x) {
    Dual r(std::conj(x.v));
    for (int a = 0; a < 4; ++a) r.d[a] = std::conj(x.d[a]);
    return r;
}
inline Dual exp(const Dual& x) {
    return detail::chain(x, [](cplx z) { return std::exp(z); }, [](cplx z) { return std::exp(z); });
}
inline Dual log(const Dual& x) {
    return detail::chain(x, [](cplx z) { return std::log(z); }, [](cplx z) { return 1.0 / z; });
}
inline Dual sin(const Dual& x) {
    return detail::chain(x, [](cplx z) { return std::sin(z); }, [](cplx z) { return std::cos(z); });
}
inline Dual cos(const Dual& x) {
    return detail::chain(x, [](cplx z) { return std::cos(z); }, [](cplx z) { return -std::sin(z); });
}
inline Dual sqrt(const Dual& x) {
    return detail::chain(x, [](cplx z) { return std::sqrt(z); },
                         [](cplx z) { return 0.5 / std::sqrt(z); });
}
inline Dual pow(const Dual& x, int n) {
    if (n == 0) return Dual(1.0);
    if (n < 0) return Dual(1.0) / pow(x, -n);
    Dual r = x;
    for (int k = 1; k < n; ++k) r *= x;
    return r;
}
inline Dual real(const Dual& x) { return (x + conj(x)) * 0.5; }
inline Dual imag(const Dual& x) { return (x - conj(x)) * cplx(0.0, -0.5); }

/// Holomorphic coordinates of a chart point lifted to dual numbers.
inline std::array<Dual, 2> dual_coordinates(const ChartPoint& p) {
    std::array<Dual, 2> z;
    for (int j = 0; j < 2; ++j) {
        z[j] = Dual(p(j));
        z[j].d[2 * j] = 1.0;
        z[j].d[2 * j + 1] = kI;
    }
    return z;
}

}  // namespace hermsurf
