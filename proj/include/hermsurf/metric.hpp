#pragma once

#include "hermsurf/dual.hpp"
#include "hermsurf/types.hpp"

#include <functional>
#include <string>

namespace hermsurf {

/// Metric matrix G = (g_{j k̄}) with its partials along (x1, y1, x2, y2).
struct MetricJet {
    Mat2c g;
    std::array<Mat2c, 4> dg;
};

/// Smooth U(2)-valued field used to re-gauge the canonical coframe.
struct GaugeJet {
    Mat2c u;
    std::array<Mat2c, 4> du;
};

/// Metric entries (g11, g12, g22) evaluated on dual coordinates; g21 = conj(g12).
using MetricEntries = std::function<std::array<Dual, 3>(const std::array<Dual, 2>&)>;
/// Gauge entries (u11, u12, u21, u22) evaluated on dual coordinates.
using GaugeEntries = std::function<std::array<Dual, 4>(const std::array<Dual, 2>&)>;

/// Quotient structure of an ambient chart.
enum class ChartQuotient { None, Lattice, Dilation, Projective };

/// Coordinate chart of the ambient surface. Lattice quotients identify
/// z ~ z + 2π(m1 + i n1, m2 + i n2); the Hopf dilation identifies z ~ 2z.
struct AmbientChart {
    std::string id;
    ChartQuotient quotient = ChartQuotient::None;
    double box_half_width = 1e6;

    bool contains(const ChartPoint& p) const;
    /// Representative of p in the fundamental domain (annulus 1 ≤ |z| < 2 or
    /// the lattice cell [0, 2π)^4); identity for unquotiented charts.
    ChartPoint reduce(const ChartPoint& p) const;
};

/// Hermitian metric on an ambient chart with exact first derivatives.
class MetricField {
public:
    MetricField(std::string name, AmbientChart chart, MetricEntries entries, bool kahler);

    const std::string& name() const { return name_; }
    const AmbientChart& chart() const { return chart_; }
    /// True when the metric is known to be Kähler (torsion vanishes identically).
    bool kahler() const { return kahler_; }

    Mat2c eval(const ChartPoint& p) const;
    MetricJet jet(const ChartPoint& p) const;

    /// Finite-difference step used for second-order quantities at p.
    double fd_step(const ChartPoint& p) const;
    void set_fd_step(double relative) { fd_relative_ = relative; }
    /// Take first derivatives by Richardson-extrapolated central differences
    /// of eval() with step fd_step instead of the dual-number evaluators.
    void set_fd_first_derivatives(bool on) { fd_first_ = on; }

    void set_gauge(GaugeEntries gauge) { gauge_ = std::move(gauge); }
    bool has_gauge() const { return static_cast<bool>(gauge_); }
    GaugeJet gauge(const ChartPoint& p) const;

    /// Throws DerivativeUnavailable if the FD window around p leaves the chart.
    void require_window(const ChartPoint& p) const;

private:
    std::string name_;
    AmbientChart chart_;
    MetricEntries entries_;
    GaugeEntries gauge_;
    bool kahler_;
    double fd_relative_ = 1e-5;
    bool fd_first_ = false;
};

MetricField flat_metric();
/// Flat metric on C^2 / (2πZ)^4.
MetricField flat_torus_metric();
/// Fubini–Study metric on an affine chart of CP^2, normalized so G(0) = I.
MetricField fubini_study_metric();
/// Hopf metric |z|^{-2} I on (C^2 \ 0) / (z ~ 2z).
MetricField hopf_metric();

/// Catalogue lookup by name: flat, flat-torus, fubini-study, hopf.
MetricField metric_by_name(const std::string& name);

/// Smooth non-constant U(2) gauge built from trigonometric functions of the
/// real coordinates; `seed` selects the frequencies and phases.
GaugeEntries random_gauge(unsigned seed);

}  // namespace hermsurf
