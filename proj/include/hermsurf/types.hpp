#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <numbers>

namespace hermsurf {

using cplx = std::complex<double>;
using Vec2c = Eigen::Vector2cd;
using Vec3c = Eigen::Vector3cd;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec4d = Eigen::Vector4d;
using Mat4d = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Point of an ambient chart: holomorphic coordinates (z1, z2).
using ChartPoint = Vec2c;

/// Real coordinates (x1, y1, x2, y2) of a chart point.
inline Vec4d to_real(const ChartPoint& p) {
    return {p(0).real(), p(0).imag(), p(1).real(), p(1).imag()};
}

inline ChartPoint from_real(const Vec4d& x) {
    return ChartPoint(cplx(x(0), x(1)), cplx(x(2), x(3)));
}

inline ChartPoint shifted(const ChartPoint& p, int real_axis, double h) {
    Vec4d x = to_real(p);
    x(real_axis) += h;
    return from_real(x);
}

}  // namespace hermsurf
