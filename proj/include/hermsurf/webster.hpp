#pragma once

#include "hermsurf/angle.hpp"

#include <string>
#include <vector>

namespace hermsurf {

// Curvatures are those of the induced metric λ²|dw|²: K is the Gauss
// curvature and K⊥ the curvature of the oriented normal bundle, so that
// ∫K dA = 2π χ(TΣ) and ∫K⊥ dA = 2π χ(T⊥Σ).

/// K from dρ = −i K' φ∧φ̄ with ρ = −i(log λ)_w dw + i(log λ)_w̄ dw̄ and
/// φ = λ dw (K' = K/2 for this normalization of φ).
Eigen::VectorXd gauss_curvature(const PullbackJet& jet, const SurfaceDomain& dom);
/// Classical −Δ₀ log λ / λ² from the conformal factor alone.
Eigen::VectorXd gauss_curvature_classical(const Eigen::VectorXd& lambda, const SurfaceDomain& dom);
/// Gauss equation ⟨R(e1,e2)e2,e1⟩ + ⟨B11,B22⟩ − |B12|² with real ambient data.
Eigen::VectorXd gauss_curvature_extrinsic(const PullbackJet& jet, const MetricField& metric);

/// K⊥ from the Ricci equation with an oriented orthonormal normal frame:
/// K⊥ = ⟨R(e1,e2)n2,n1⟩ + Σ_k (⟨B(e1,e_k),n1⟩⟨B(e2,e_k),n2⟩ − ⟨B(e1,e_k),n2⟩⟨B(e2,e_k),n1⟩).
/// Smooth through complex and anticomplex points. Needs second-order jets.
Eigen::VectorXd normal_curvature(const PullbackJet& jet, const MetricField& metric);

/// Per-node adapted frame: ω' = U ω satisfies f*ω'¹ = cos(α/2)φ and
/// f*ω'² = sin(α/2)φ̄.
struct AdaptedFrame {
    Mat2c u;
    double c = 0, s = 0;
    /// Levi-Civita blocks pulled back to the surface in the adapted frame:
    /// phi[d](j, i) and phibar[d](j, i) evaluated on ∂_w (d = 0) and ∂_w̄ (d = 1).
    std::array<Mat2c, 2> phi, phibar;
};
AdaptedFrame adapted_frame(const PullbackJet& jet, const MetricField& metric, int k);

struct AdaptedCurvature {
    Eigen::VectorXd k_perp;        // from dρ⊥, zero on masked nodes
    Eigen::VectorXd k_structure;   // Chern-curvature expression for K⊥
    double rho_residual = 0;       // ρ rebuilt from the adapted frame vs ρ from λ
    std::vector<bool> mask;        // nodes left out (excised, inactive or near them)
};
/// K⊥ from the normal connection form ρ⊥ of the adapted frame, exteriorized
/// with local finite differences; nodes within `excised` (plus a stencil
/// margin) are skipped. Throws AdaptedFrameDegenerate if sin α < 1e-3 at a
/// node that is not excised. The structure expression assumes Chern-minimality.
AdaptedCurvature normal_curvature_adapted(const PullbackJet& jet, const MetricField& metric,
                                          const SurfaceDomain& dom, const std::vector<bool>& excised);

struct EulerNumbers {
    double chi_T = 0, chi_N = 0;
    double excised_fraction = 0;
    /// Contribution of the excised disks to each integral.
    double correction_T = 0, correction_N = 0;
};
/// (1/2π)∫K dA and (1/2π)∫K⊥ dA over the whole surface. When a mask is
/// supplied its area fraction must stay below max_fraction.
EulerNumbers euler_numbers(const Eigen::VectorXd& k, const Eigen::VectorXd& k_perp, const SurfaceDomain& dom,
                           const Eigen::VectorXd& lambda, const std::vector<bool>* mask = nullptr,
                           double max_fraction = 0.01);

/// dx∧dy coefficient of a pulled-back ambient 2-form at every node.
GridField pullback_density(const PullbackJet& jet, const std::vector<TwoForm>& forms);
/// (1/2π)∫ f*Ric.
double c1_pairing(const MetricField& metric, const PullbackJet& jet, const SurfaceDomain& dom);
/// (1/2π)∫ f*dθ_L (zero on a closed surface).
double stokes_integral(const MetricField& metric, const PullbackJet& jet, const SurfaceDomain& dom);

/// Δ log u for u = |a_1|² and |a_1̄|², returned as (Δ log cos(α/2), Δ log sin(α/2)).
std::pair<Eigen::VectorXd, Eigen::VectorXd> log_laplacians(const PullbackJet& jet, const SurfaceDomain& dom);

struct WebsterConfig {
    double tol_detect = 1e-3;
    double winding_radius = 6;
    double excision_radius = 8;
    double tol_chern = 1e-6;
    double tol_holomorphic = 1e-6;  // |a_1̄| (or |a_1|) threshold in classify
    double rounding_gap = 0.1;
};

struct WebsterReport {
    Classification classification = Classification::Generic;
    bool skipped = false;  // formulae not evaluated (non-generic subject)
    bool accepted = false;
    int P = 0, Q = 0;
    std::vector<SingularPoint> points;
    double chern_mean_curvature = 0;
    double chi_T = 0, chi_N = 0, c1 = 0;
    long chi_T_round = 0, chi_N_round = 0, c1_round = 0;
    double residual_difference = 0, residual_sum = 0;
    double stokes_residual = 0;
    double pointwise_laplacian_residual = 0;
    double pointwise_balance_residual = 0;
    double torsion_product_residual = 0;
    double normal_structure_residual = 0;
    double gauss_crosscheck = 0;  // ρ route vs classical formula
    double excised_fraction = 0;
    double alpha_min = 0, alpha_max = 0;
    double sup_k_plus_kperp = 0;
    Eigen::VectorXd k, k_perp, alpha, laplacian_residual;
};

/// Full verification pipeline on a jet with second-order data. Non-generic
/// or non-Chern-minimal subjects get a partial report with skipped = true.
WebsterReport verify(const Subject& subject, const PullbackJet& jet, const WebsterConfig& config = {});

/// Pointwise max residual of 2|a_{1̄1}|² = L¹₁₂L²₁₂ sin α and its conjugate form,
/// over nodes not excised.
double torsion_product_residual(const PullbackJet& jet, const MetricField& metric, const std::vector<bool>& excised);

struct ConstantAngle {
    bool is_constant_real = false;
    double alpha_spread = 0;
    double sup_k_plus_kperp = 0;
    bool consistent = false;  // both predicates agree
};
ConstantAngle constant_angle_check(const WebsterReport& report, double tol_alpha = 1e-6, double tol_k = 1e-4,
                                   double delta = 1e-3);

struct WolfsonBound {
    long lhs = 0, middle = 0;
    bool holds = false;
};
/// (2−2g) + |c1| + I_f − 2D_f ≤ −2 min(P, Q) ≤ 0.
WolfsonBound wolfson_bound(int genus, int c1, int i_f, int d_f, int p, int q);

}  // namespace hermsurf
