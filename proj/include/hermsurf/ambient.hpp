#pragma once

#include "hermsurf/forms.hpp"
#include "hermsurf/metric.hpp"

namespace hermsurf {

/// Torsion coefficients L^i_{jk} of the Chern connection in the unitary frame;
/// antisymmetric in (j, k), so only L^i_{12} is stored.
struct Torsion {
    Vec2c l12 = Vec2c::Zero();

    cplx operator()(int i, int j, int k) const {
        if (j == k) return 0.0;
        return j == 0 ? l12(i) : -l12(i);
    }
};

/// Chern connection data at a point. Connection and curvature forms are
/// expanded over (dz1, dz2, dz̄1, dz̄2); curvature coefficients refer to the
/// unitary coframe (ω1, ω2, ω̄1, ω̄2).
struct FramePacket {
    ChartPoint point;
    Mat2c coframe;                 // ω = A dz with A^H A = G^T
    MatOneForm connection;         // entry (i, j) is ω^i_j
    Torsion torsion;
    bool has_curvature = false;
    MatTwoForm curvature;          // entry (i, j) is Ω^i_j
    cplx r_hol[2][2] = {};         // R^i_{j12}
    cplx r_mix[2][2][2][2] = {};   // R^i_{jkl̄}
    cplx r_anti[2][2] = {};        // R^i_{j1̄2̄}
};

/// Levi-Civita connection expressed in the unitary frame: phi(j, i) is the
/// e_j component of ∇e_i and phibar(j, i) its ē_j component.
struct LeviCivitaPacket {
    MatOneForm phi;
    MatOneForm phibar;
};

/// Real Christoffel symbols Γ^c_{ab}, stored as christoffel[c](a, b), over
/// the real coordinates (x1, y1, x2, y2).
struct RealChristoffel {
    Mat4d metric;
    std::array<Mat4d, 4> christoffel;
};

/// Riemann tensor R^a_{bcd} with R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z,
/// indexed [a][b][c][d] over the real coordinates.
struct RealRiemann {
    double r[4][4][4][4];
};

/// Covariant derivatives of torsion: hol[i][j][k][l] = L^i_{jkl},
/// anti[i][j][k][l] = L^i_{jkl̄}.
struct TorsionDerivatives {
    cplx hol[2][2][2][2] = {};
    cplx anti[2][2][2][2] = {};
};

Mat2c unitary_coframe(const MetricField& metric, const ChartPoint& p);
FramePacket chern_connection(const MetricField& metric, const ChartPoint& p);
/// Connection plus curvature; the curvature needs a finite-difference window.
FramePacket chern_curvature(const MetricField& metric, const ChartPoint& p);
TwoForm ricci_form(const MetricField& metric, const ChartPoint& p);
/// Independent evaluation −i∂∂̄ log det G by finite differences.
TwoForm ricci_form_potential(const MetricField& metric, const ChartPoint& p);

LeviCivitaPacket levi_civita(const MetricField& metric, const ChartPoint& p);
/// Residuals of the Chern/Levi-Civita difference formulas; first entry for
/// the (1,0) block, second for the (0,1) block.
std::pair<double, double> check_connection_difference(const MetricField& metric, const ChartPoint& p);
/// Same with the Levi-Civita side evaluated on `lc_metric`, e.g. the metric
/// with finite-difference first derivatives.
std::pair<double, double> check_connection_difference(const MetricField& metric, const MetricField& lc_metric,
                                                      const ChartPoint& p);

/// Lee-type form θ_L = L^k_{ki} ω^i − conj(L^k_{ki}) ω̄^i.
OneForm theta_L(const MetricField& metric, const ChartPoint& p);
/// dθ_L by finite differences of θ_L.
TwoForm d_theta_L(const MetricField& metric, const ChartPoint& p);
/// dθ_L assembled from torsion derivatives and torsion squares.
TwoForm d_theta_L_structure(const MetricField& metric, const ChartPoint& p);
TorsionDerivatives torsion_derivatives(const MetricField& metric, const ChartPoint& p);

/// Max-norm residual of dω^i = −ω^i_j ∧ ω^j + Θ^i where dω is taken by a
/// plain central difference of step h (no extrapolation), so it decays as h².
double structure_residual(const MetricField& metric, const ChartPoint& p, double h);

RealChristoffel real_christoffel(const MetricField& metric, const ChartPoint& p);
RealRiemann real_riemann(const MetricField& metric, const ChartPoint& p);
/// Real Riemannian metric induced on (x1, y1, x2, y2).
Mat4d real_metric(const Mat2c& g);

/// Christoffel contraction Γ(u, v)_l = Σ C^{(m)}_{jl} u^j v^m of the
/// holomorphic-frame Chern connection, C^{(m)} = ∂_m G · G^{-1}.
std::array<Mat2c, 2> holomorphic_christoffel(const MetricJet& jet);

}  // namespace hermsurf
