#pragma once

#include "hermsurf/types.hpp"

#include <memory>
#include <vector>

namespace hermsurf {

/// Complex samples on every node of a domain, charts concatenated.
using GridField = Eigen::VectorXcd;

enum class DomainKind { Torus, Sphere };
enum class Direction { W, WBar };

struct Node {
    int chart = 0;
    int i = 0, j = 0;
    cplx w;             // conformal coordinate in the node's chart
    double s = 0, t = 0;  // lattice parameters (torus only)
    double weight = 0;  // quadrature weight for dx dy
};

/// Compact Riemann surface discretized by conformal charts. A torus is one
/// periodic chart C / (ω1 Z + ω2 Z) sampled on an n × n grid in lattice
/// parameters (s, t) with w = s ω1 + t ω2; derivatives are spectral. The
/// sphere uses two stereographic charts w and u = 1/w sampled on boxes of
/// half-width 1.6 with fourth-order finite differences, glued by a smooth
/// partition of unity supported in |w| < 1.25 and |u| < 1.25.
class SurfaceDomain {
public:
    static SurfaceDomain torus(int n, cplx omega1 = 2 * kPi, cplx omega2 = cplx(0, 2 * kPi));
    static SurfaceDomain sphere(int n);

    DomainKind kind() const { return kind_; }
    int resolution() const { return n_; }
    int num_charts() const { return kind_ == DomainKind::Torus ? 1 : 2; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int k) const { return nodes_[k]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int index(int chart, int i, int j) const { return chart * n_ * n_ + j * n_ + i; }

    cplx omega1() const { return omega1_; }
    cplx omega2() const { return omega2_; }
    int genus() const { return kind_ == DomainKind::Torus ? 1 : 0; }
    int euler_characteristic() const { return 2 - 2 * genus(); }
    /// Smallest node spacing in the conformal coordinate.
    double cell_size() const;
    /// True if node k lies in the part of its chart that represents the point
    /// (each point of the surface is owned by exactly one node chart).
    bool owns(int k) const;

    /// True if node k carries quadrature weight (inside the partition-of-unity support).
    bool active(int k) const { return nodes_[k].weight > 0; }

    GridField zeros() const { return GridField::Zero(size()); }
    GridField deriv(const GridField& f, Direction d) const;
    /// Flat coordinate Laplacian 4 ∂_w ∂_w̄ f in each chart.
    GridField laplacian(const GridField& f) const;
    /// Laplace–Beltrami operator of λ²|dw|²: (4/λ²) ∂_w ∂_w̄ f. Throws
    /// DegenerateConformalFactor if λ < 1e-10 at an active node.
    GridField laplacian(const GridField& f, const Eigen::VectorXd& lambda) const;
    /// Fourth-order finite-difference derivative (periodic on the torus). Its
    /// stencil is local, so values that blow up at isolated points only
    /// contaminate a few neighbouring cells.
    GridField deriv_local(const GridField& f, Direction d) const;
    /// Σ weight_k f_k, i.e. ∫ f dx dy with the partition of unity applied.
    cplx integrate(const GridField& f) const;
    /// ∫ f dA for the conformal metric λ²|dw|².
    cplx integrate(const GridField& f, const Eigen::VectorXd& lambda) const;

    /// Bicubic (Catmull–Rom) interpolation of a real field at w in a chart.
    double interpolate(const Eigen::VectorXd& f, int chart, cplx w) const;
    /// (1/2π) ∮ ∂_r log|F| ds over the circle of the given radius (in cells)
    /// around w0; equals the order of a zero of a holomorphic-like F.
    double winding_flux(const GridField& f, int chart, cplx w0, double radius_cells) const;
    /// Coordinate distance between two points of a chart, accounting for the
    /// lattice on the torus.
    double distance(int chart, cplx a, cplx b) const;

private:
    struct Fft;
    DomainKind kind_ = DomainKind::Torus;
    int n_ = 0;
    cplx omega1_, omega2_;
    double half_width_ = 1.6;
    double h_ = 0;
    std::vector<Node> nodes_;
    std::shared_ptr<Fft> fft_;

    void fractional_index(cplx w, double& fi, double& fj) const;
    GridField torus_deriv(const GridField& f, Direction d) const;
    GridField chart_fd_deriv(const GridField& f, Direction d) const;
    GridField torus_fd_deriv(const GridField& f, Direction d) const;
};

/// Smooth step e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) clamped to [0, 1].
double smooth_step(double t);
/// Partition-of-unity weight of the north chart at |w|.
double north_weight(double abs_w);

}  // namespace hermsurf
