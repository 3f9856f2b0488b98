#pragma once

#include "hermsurf/types.hpp"

#include <type_traits>

namespace hermsurf {

// Complex differential forms on an ambient chart, expanded over the basis
// (dz1, dz2, dz̄1, dz̄2). A 2-form F is stored as the antisymmetric matrix with
// F = 1/2 Σ F_ab dx^a ∧ dx^b, so F_ab is the coefficient of dx^a ∧ dx^b (a < b).

using OneForm = Vec4c;
using TwoForm = Mat4c;
/// Matrix-valued 1-form: one 2×2 coefficient matrix per basis element.
using MatOneForm = std::array<Mat2c, 4>;
using MatTwoForm = std::array<std::array<TwoForm, 2>, 2>;

/// Converts partials along (x1, y1, x2, y2) into (∂_z1, ∂_z2, ∂_z̄1, ∂_z̄2).
template <class T>
std::array<T, 4> wirtinger(const std::array<T, 4>& real_partials) {
    const cplx h(0.5, 0.0);
    const cplx hi(0.0, 0.5);
    return {h * real_partials[0] - hi * real_partials[1], h * real_partials[2] - hi * real_partials[3],
            h * real_partials[0] + hi * real_partials[1], h * real_partials[2] + hi * real_partials[3]};
}

/// The complex conjugate 1-form expressed over the same basis.
inline OneForm conj_form(const OneForm& c) {
    return OneForm(std::conj(c(2)), std::conj(c(3)), std::conj(c(0)), std::conj(c(1)));
}

inline TwoForm conj_form(const TwoForm& f) {
    Eigen::PermutationMatrix<4> swap;
    swap.indices() << 2, 3, 0, 1;
    return swap * f.conjugate() * swap.transpose();
}

inline TwoForm wedge(const OneForm& a, const OneForm& b) {
    return a * b.transpose() - b * a.transpose();
}

/// Exterior derivative of a 1-form whose coefficient vector has Wirtinger
/// partials `partials[b] = ∂_b c`.
inline TwoForm exterior(const std::array<OneForm, 4>& partials) {
    TwoForm f;
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) f(b, a) = partials[b](a) - partials[a](b);
    return f;
}

/// Change of basis to (ω1, ω2, ω̄1, ω̄2) where ω = A dz.
inline Mat4c frame_matrix(const Mat2c& coframe) {
    Mat4c m = Mat4c::Zero();
    m.topLeftCorner<2, 2>() = coframe;
    m.bottomRightCorner<2, 2>() = coframe.conjugate();
    return m;
}

inline OneForm to_frame(const OneForm& c, const Mat2c& coframe) {
    return frame_matrix(coframe).transpose().inverse() * c;
}

inline TwoForm to_frame(const TwoForm& f, const Mat2c& coframe) {
    const Mat4c minv = frame_matrix(coframe).inverse();
    return minv.transpose() * f * minv;
}

/// The 1-forms ω^i = A^i_j dz^j and ω̄^i as coefficient vectors.
inline OneForm coframe_form(const Mat2c& coframe, int i, bool conjugate) {
    OneForm c = OneForm::Zero();
    if (!conjugate) {
        c(0) = coframe(i, 0);
        c(1) = coframe(i, 1);
    } else {
        c(2) = std::conj(coframe(i, 0));
        c(3) = std::conj(coframe(i, 1));
    }
    return c;
}

/// Values of the basis 1-forms on the pushforward of ∂_w (or ∂_w̄) given the
/// Wirtinger derivatives of the coordinate functions along the surface.
inline Vec4c basis_on(const Vec2c& f_w, const Vec2c& f_wbar) {
    return Vec4c(f_w(0), f_w(1), std::conj(f_wbar(0)), std::conj(f_wbar(1)));
}

/// Coefficient of dw ∧ dw̄ in the pullback of a 2-form.
inline cplx pullback_2form(const TwoForm& f, const Vec4c& on_w, const Vec4c& on_wbar) {
    return on_w.transpose() * f * on_wbar;
}

inline MatOneForm zero_matform() {
    MatOneForm w;
    for (auto& m : w) m.setZero();
    return w;
}

/// Entry (i, j) of a matrix-valued 1-form.
inline OneForm entry(const MatOneForm& w, int i, int j) {
    return OneForm(w[0](i, j), w[1](i, j), w[2](i, j), w[3](i, j));
}

/// Central difference along a real chart axis with one Richardson step.
/// `fn` must return an Eigen object or a scalar.
template <class F>
auto richardson_derivative(F&& fn, const ChartPoint& p, int axis, double h) {
    using T = std::decay_t<decltype(fn(p))>;
    auto central = [&](double step) -> T {
        T plus = fn(shifted(p, axis, step));
        T minus = fn(shifted(p, axis, -step));
        return (plus - minus) * (0.5 / step);
    };
    T coarse = central(h);
    T fine = central(0.5 * h);
    return T((fine * 4.0 - coarse) * (1.0 / 3.0));
}

}  // namespace hermsurf
