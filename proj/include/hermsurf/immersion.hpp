#pragma once

#include "hermsurf/ambient.hpp"
#include "hermsurf/domain.hpp"

#include <string>
#include <vector>

namespace hermsurf {

/// How the sampled core of a map extends across the fundamental domain.
///   Additive:        f = core + J_s s + J_t t            (flat tori)
///   Multiplicative:  f = exp(s log μ_s + t log μ_t) core (Hopf surfaces)
///   Projective:      core is a lift F ∈ C^3, f = [F]      (CP^2)
enum class JumpKind { Additive, Multiplicative, Projective };

struct ImmersionMap {
    std::string name;
    JumpKind jump = JumpKind::Additive;
    /// Sampled core components: 2 for Additive/Multiplicative, 3 for Projective.
    std::vector<GridField> core;
    Vec2c jump_s = Vec2c::Zero(), jump_t = Vec2c::Zero();
    cplx log_mu_s = 0.0, log_mu_t = 0.0;
};

/// Parameters of the built-in catalogue.
struct ImmersionParams {
    double slant = 0.6;       // c in slanted-flat-torus
    double lattice_scale = 5.0;
    int degree = 1;           // rational-curve degree
    unsigned seed = 1;        // random-trig
    int trig_degree = 0;      // random-trig perturbation degree
    double epsilon = 0.05;    // random-trig / complex-line perturbation size
    double radius = 0.6;      // first circle radius in hopf-flat-torus
};

/// A catalogue entry bundled with the ambient metric and surface it lives on.
struct Subject {
    std::string name;
    MetricField metric;
    SurfaceDomain domain;
    ImmersionMap map;
};

/// Catalogue: slanted-flat-torus, holomorphic-line, rational-curve,
/// clifford-torus, veronese-f1, hopf-elliptic, random-trig, complex-line,
/// harmonic-sphere (∂-transform of the rational curve (1, w^d, w^{d+1})),
/// hopf-flat-torus (a product of circles in the unit sphere of the Hopf surface).
Subject make_subject(const std::string& name, int n, const ImmersionParams& params = {});
std::vector<std::string> catalogue_names();

/// Map values and Wirtinger jets up to order two, expressed in an ambient
/// chart. For projective maps `ambient_chart[k]` is the homogeneous index
/// normalized to 1 at node k.
struct SurfaceSamples {
    std::vector<ChartPoint> f, fw, fwb, fww, fwwb, fwbwb;
    std::vector<int> ambient_chart;
    /// True when every surface chart uses a single ambient chart, so that
    /// frame fields along f are smooth and may be differentiated on the grid.
    bool frame_continuous = true;
};

SurfaceSamples sample_jets(const ImmersionMap& map, const SurfaceDomain& dom);

struct SecondOrder {
    std::vector<Vec2c> a11, a11b, a1b1, a1b1b;
};

/// First- and second-order pullback data. a1[k](i) = a^i_1 at node k.
struct PullbackJet {
    SurfaceSamples samples;
    std::vector<FramePacket> frames;                 // Chern connection at f
    std::vector<std::array<Mat2c, 2>> christoffel;   // holomorphic-frame C^{(m)}
    Eigen::VectorXd lambda;
    GridField lambda_w, lambda_wb;
    std::vector<Vec2c> a1, a1b;
    Eigen::VectorXd conformality, isometry;
    double max_conformality = 0.0;
    bool conformal = true;
    bool has_second = false;
    SecondOrder second;

    int size() const { return static_cast<int>(a1.size()); }
    /// Values of (dz1, dz2, dz̄1, dz̄2) on f_*∂_w and f_*∂_w̄ at node k.
    Vec4c on_w(int k) const { return basis_on(samples.fw[k], samples.fwb[k]); }
    Vec4c on_wb(int k) const { return basis_on(samples.fwb[k], samples.fw[k]); }
    /// Pulled-back matrix 1-form evaluated on ∂_w or ∂_w̄.
    Mat2c connection_on(int k, bool wbar) const;
};

/// First-order pullback. Throws NotImmersive on rank drop; a conformality
/// residual above `conformal_tol` is flagged in the jet, not thrown.
PullbackJet pullback(const ImmersionMap& map, const SurfaceDomain& dom, const MetricField& metric,
                     double conformal_tol = 1e-8);

/// Second-order coefficients from the Chern Christoffel symbols along f
/// (pointwise). Fills jet.second.
void covariant_jet(PullbackJet& jet, const MetricField& metric, const SurfaceDomain& dom);

/// Second-order coefficients from the covariant differentials of the a-fields
/// (grid derivatives plus pulled-back connection forms). Requires a
/// frame-continuous sampling; throws DerivativeUnavailable otherwise.
SecondOrder covariant_jet_frame(const PullbackJet& jet, const SurfaceDomain& dom);

/// H_C^i = a^i_{11̄} + a^i_{1̄1}.
std::vector<Vec2c> chern_mean_curvature(const PullbackJet& jet);
/// tr D df over e_i from torsion contractions (right-hand side of the
/// Chern/Levi-Civita mean-curvature difference formula).
std::vector<Vec2c> lc_mean_curvature(const PullbackJet& jet);
/// Same quantity from the real tension field built with real Christoffel symbols.
std::vector<Vec2c> lc_mean_curvature_tension(const PullbackJet& jet, const MetricField& metric);

/// Pointwise residual of −a_{11̄} + a_{1̄1} = 2 L a_1 a_{1̄} for given second-order data.
Eigen::VectorXd cartan_residual(const PullbackJet& jet, const SecondOrder& second);

/// Max-norm residuals of the two third-order Ricci identities.
std::pair<double, double> check_ricci_identities(const PullbackJet& jet, const MetricField& metric,
                                                 const SurfaceDomain& dom);

/// Convenience: pullback followed by covariant_jet.
PullbackJet full_jet(const Subject& subject, double conformal_tol = 1e-8);

/// Component i of a vector field as a grid field.
GridField component(const std::vector<Vec2c>& v, int i);
double max_norm(const std::vector<Vec2c>& v);

}  // namespace hermsurf
