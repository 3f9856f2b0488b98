#pragma once

#include "hermsurf/immersion.hpp"

#include <string>
#include <vector>

namespace hermsurf {

enum class PointKind { Complex, Anticomplex };
enum class Classification { Generic, Holomorphic, Antiholomorphic, NotChernMinimal };

std::string to_string(PointKind k);
std::string to_string(Classification c);

struct SingularPoint {
    PointKind kind = PointKind::Complex;
    int chart = 0;
    cplx w;
    int node = -1;
    double value = 0;  // sin(α/2) or cos(α/2) at the node
    int order = 0;
    double flux = 0;
};

struct AngleField {
    Eigen::VectorXd alpha, cos2, sin2;
    std::vector<SingularPoint> points;
    int P = 0, Q = 0;
    /// False if some flux was more than 0.2 away from its rounded order.
    bool orders_consistent = true;

    /// √(Σ|a^i_1̄|²) or √(Σ|a^i_1|²) as a grid field.
    GridField magnitude(PointKind k) const;
};

/// α = 2 atan2(|a_1̄|, |a_1|) with the two squared magnitudes.
AngleField kahler_angle(const PullbackJet& jet);
AngleField kahler_angle(const std::vector<Vec2c>& a1, const std::vector<Vec2c>& a1b);

/// Holomorphic if |a_1̄| < tiny on more than `fraction` of the active nodes,
/// antiholomorphic likewise for |a_1|.
Classification classify(const AngleField& angle, const SurfaceDomain& dom, double tiny = 1e-6,
                        double fraction = 0.9);

/// Grid local minima of sin(α/2) and cos(α/2) on owned nodes. A minimum is
/// kept when its value is below tol_detect plus the largest jump to a
/// neighbour (one-cell Lipschitz allowance), so that simple zeros sitting
/// between nodes are not missed; point_orders confirms them by flux.
/// Throws NonIsolatedZeroSuspected when a sublevel region {value < tol_detect}
/// is wider than the dedup radius.
std::vector<SingularPoint> locate_singular_points(const AngleField& angle, const SurfaceDomain& dom,
                                                  double tol_detect = 1e-3, double radius_cells = 6);

/// Orders from the log-flux of the gauge-invariant magnitudes. Candidates
/// whose flux rounds to zero are dropped. Fills angle.points, P and Q.
void point_orders(AngleField& angle, const std::vector<SingularPoint>& candidates, const SurfaceDomain& dom,
                  double radius_cells = 6);

/// classify, locate and order in one call; a non-generic field is returned
/// with no points.
Classification analyse_angle(AngleField& angle, const SurfaceDomain& dom, double tol_detect = 1e-3,
                             double radius_cells = 6, double tiny = 1e-6);

/// Nodes within radius_cells of any singular point (true = excised).
std::vector<bool> excision_mask(const std::vector<SingularPoint>& points, const SurfaceDomain& dom,
                                double radius_cells);

}  // namespace hermsurf
