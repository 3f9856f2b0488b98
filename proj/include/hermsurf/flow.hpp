#pragma once

#include "hermsurf/immersion.hpp"

#include <string>
#include <vector>

namespace hermsurf {

struct FlowConfig {
    double beta = 10.0;        // conformality penalty weight
    int max_iter = 500;
    int band = 2;              // Fourier modes |k_s|, |k_t| ≤ band are optimized
    double grad_tol = 1e-10;   // stop on preconditioned gradient norm
    double objective_tol = 1e-14;
    double fd_step = 1e-7;
    double initial_step = 1.0;
    int max_halvings = 40;
    /// Seeds whose energy is already below this are returned unchanged.
    double stationary_energy = 1e-10;
};

struct FlowHistory {
    double energy, penalty, step;
};

struct FlowState {
    ImmersionMap map;
    double energy = 0, penalty = 0;
    double step = 0;
    double grad_norm = 0;
    int iterations = 0;  // accepted steps
    bool stalled = false;
    std::vector<FlowHistory> history;

    double objective(double beta) const { return energy + beta * penalty; }
};

struct Energy {
    double energy = 0, penalty = 0;
};

/// E = ∫‖H_C‖² dA and the penalty ∫|⟨a_1, a_1̄⟩|² dA for a torus map.
Energy energy(const ImmersionMap& map, const MetricField& metric, const SurfaceDomain& dom);

/// Backtracking descent on E + β·penalty over the low Fourier modes of the
/// additive core. Accepted steps strictly decrease the objective. A failed
/// line search stops the run with `stalled` set and the best state kept.
FlowState minimize(const ImmersionMap& seed, const MetricField& metric, const SurfaceDomain& dom,
                   const FlowConfig& config = {});

/// Objective gradient over the optimized modes (forward differences), in the
/// order used by minimize; exposed for stationarity checks.
Eigen::VectorXd objective_gradient(const ImmersionMap& map, const MetricField& metric, const SurfaceDomain& dom,
                                   const FlowConfig& config, double base);
/// map + Σ coeff_m · mode_m for the optimized modes.
ImmersionMap perturb_modes(const ImmersionMap& map, const SurfaceDomain& dom, const FlowConfig& config,
                           const Eigen::VectorXd& coeff);
int mode_count(const FlowConfig& config);

/// Binary layout (little-endian): "HSCP", uint32 version = 1, uint32 nx,
/// uint32 ny, uint32 planes, then `planes` blocks of nx·ny float64 in node
/// order. Immersion checkpoints hold the four real coordinates of f.
struct PlaneFile {
    int nx = 0, ny = 0;
    std::vector<Eigen::VectorXd> planes;
};
void write_planes(const std::string& path, const PlaneFile& file);
PlaneFile read_planes(const std::string& path);

void save_checkpoint(const std::string& path, const FlowState& state, const SurfaceDomain& dom);
/// Rebuilds an additive map with the jumps of `like` from a checkpoint.
ImmersionMap load_checkpoint(const std::string& path, const ImmersionMap& like, const SurfaceDomain& dom);

}  // namespace hermsurf
