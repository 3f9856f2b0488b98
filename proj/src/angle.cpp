#include "hermsurf/angle.hpp"

#include "hermsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace hermsurf {

std::string to_string(PointKind k) { return k == PointKind::Complex ? "complex" : "anticomplex"; }

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Generic: return "generic";
        case Classification::Holomorphic: return "holomorphic";
        case Classification::Antiholomorphic: return "antiholomorphic";
        case Classification::NotChernMinimal: return "not-chern-minimal";
    }
    return "unknown";
}

GridField AngleField::magnitude(PointKind k) const {
    const Eigen::VectorXd& sq = k == PointKind::Complex ? sin2 : cos2;
    return sq.cwiseMax(0.0).cwiseSqrt().cast<cplx>();
}

AngleField kahler_angle(const std::vector<Vec2c>& a1, const std::vector<Vec2c>& a1b) {
    const int n = static_cast<int>(a1.size());
    AngleField out;
    out.alpha.resize(n);
    out.cos2.resize(n);
    out.sin2.resize(n);
    for (int k = 0; k < n; ++k) {
        const double c = a1[k].norm(), s = a1b[k].norm();
        out.alpha(k) = 2 * std::atan2(s, c);
        // Normalize so the two squares sum to one exactly.
        const double r2 = c * c + s * s;
        out.cos2(k) = r2 > 0 ? c * c / r2 : 1.0;
        out.sin2(k) = r2 > 0 ? s * s / r2 : 0.0;
    }
    return out;
}

AngleField kahler_angle(const PullbackJet& jet) { return kahler_angle(jet.a1, jet.a1b); }

Classification classify(const AngleField& angle, const SurfaceDomain& dom, double tiny, double fraction) {
    int active = 0, small_s = 0, small_c = 0;
    for (int k = 0; k < dom.size(); ++k) {
        if (!dom.active(k)) continue;
        ++active;
        if (std::sqrt(std::max(angle.sin2(k), 0.0)) < tiny) ++small_s;
        if (std::sqrt(std::max(angle.cos2(k), 0.0)) < tiny) ++small_c;
    }
    if (small_s > fraction * active) return Classification::Holomorphic;
    if (small_c > fraction * active) return Classification::Antiholomorphic;
    return Classification::Generic;
}

namespace {

// Coordinate of node k seen from the chart `chart`.
cplx chart_coordinate(const SurfaceDomain& dom, int k, int chart) {
    const Node& nd = dom.node(k);
    if (nd.chart == chart) return nd.w;
    return std::abs(nd.w) > 0 ? 1.0 / nd.w : cplx(1e300, 0);
}

template <class F>
void for_neighbours(const SurfaceDomain& dom, int k, F&& fn) {
    const Node& nd = dom.node(k);
    const int n = dom.resolution();
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            int i = nd.i + di, j = nd.j + dj;
            if (dom.kind() == DomainKind::Torus) {
                i = (i + n) % n;
                j = (j + n) % n;
            } else if (i < 0 || j < 0 || i >= n || j >= n) {
                continue;
            }
            fn(dom.index(nd.chart, i, j));
        }
}

// Largest rise from node k to a neighbour: a zero between nodes leaves values
// of this size on the surrounding nodes.
Eigen::VectorXd neighbour_jump(const Eigen::VectorXd& v, const SurfaceDomain& dom) {
    Eigen::VectorXd jump = Eigen::VectorXd::Zero(v.size());
    for (int k = 0; k < dom.size(); ++k)
        for_neighbours(dom, k, [&](int nb) { jump(k) = std::max(jump(k), v(nb) - v(k)); });
    return jump;
}

void check_isolated(const Eigen::VectorXd& v, const SurfaceDomain& dom, double tol, double radius,
                    PointKind kind) {
    const Eigen::VectorXd jump = neighbour_jump(v, dom);
    auto low = [&](int k) { return v(k) < tol + jump(k); };
    std::vector<char> seen(dom.size(), 0);
    for (int k = 0; k < dom.size(); ++k) {
        if (seen[k] || !low(k) || !dom.owns(k)) continue;
        std::vector<int> region;
        std::queue<int> q;
        q.push(k);
        seen[k] = 1;
        while (!q.empty()) {
            const int m = q.front();
            q.pop();
            region.push_back(m);
            for_neighbours(dom, m, [&](int nb) {
                if (!seen[nb] && low(nb)) {
                    seen[nb] = 1;
                    q.push(nb);
                }
            });
        }
        // extent measured from the lowest node of the region
        const int centre = *std::min_element(region.begin(), region.end(), [&](int a, int b) { return v(a) < v(b); });
        const int chart = dom.node(centre).chart;
        double extent = 0;
        for (int m : region) extent = std::max(extent, dom.distance(chart, chart_coordinate(dom, m, chart), dom.node(centre).w));
        if (extent > radius)
            throw Error(ErrorKind::NonIsolatedZeroSuspected,
                        "angle: " + to_string(kind) + " sublevel region is not isolated");
    }
}

}  // namespace

std::vector<SingularPoint> locate_singular_points(const AngleField& angle, const SurfaceDomain& dom,
                                                  double tol_detect, double radius_cells) {
    const Classification cls = classify(angle, dom);
    if (cls == Classification::Holomorphic)
        throw Error(ErrorKind::NonIsolatedZeroSuspected, "angle: complex points fill the surface (holomorphic)");
    if (cls == Classification::Antiholomorphic)
        throw Error(ErrorKind::NonIsolatedZeroSuspected,
                    "angle: anticomplex points fill the surface (antiholomorphic)");

    const double radius = radius_cells * dom.cell_size();
    std::vector<SingularPoint> out;
    for (PointKind kind : {PointKind::Complex, PointKind::Anticomplex}) {
        const Eigen::VectorXd v = (kind == PointKind::Complex ? angle.sin2 : angle.cos2).cwiseMax(0.0).cwiseSqrt();
        check_isolated(v, dom, tol_detect, radius, kind);

        std::vector<SingularPoint> cand;
        for (int k = 0; k < dom.size(); ++k) {
            if (!dom.owns(k)) continue;
            bool is_min = true;
            double jump = 0;
            for_neighbours(dom, k, [&](int nb) {
                if (v(nb) < v(k)) is_min = false;
                jump = std::max(jump, v(nb) - v(k));
            });
            if (!is_min || v(k) >= tol_detect + jump) continue;
            SingularPoint p;
            p.kind = kind;
            p.chart = dom.node(k).chart;
            p.w = dom.node(k).w;
            p.node = k;
            p.value = v(k);
            cand.push_back(p);
        }
        std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
        std::vector<SingularPoint> kept;
        for (const auto& c : cand) {
            bool dup = false;
            for (const auto& q : kept)
                if (dom.distance(q.chart, q.w, chart_coordinate(dom, c.node, q.chart)) <= radius) dup = true;
            if (!dup) kept.push_back(c);
        }
        out.insert(out.end(), kept.begin(), kept.end());
    }
    return out;
}

void point_orders(AngleField& angle, const std::vector<SingularPoint>& candidates, const SurfaceDomain& dom,
                  double radius_cells) {
    const GridField mag_s = angle.magnitude(PointKind::Complex);
    const GridField mag_c = angle.magnitude(PointKind::Anticomplex);
    angle.points.clear();
    angle.P = angle.Q = 0;
    angle.orders_consistent = true;
    for (size_t id = 0; id < candidates.size(); ++id) {
        SingularPoint p = candidates[id];
        try {
            p.flux = dom.winding_flux(p.kind == PointKind::Complex ? mag_s : mag_c, p.chart, p.w, radius_cells);
        } catch (const Error& e) {
            throw Error(e.kind(), e.detail() + " (candidate " + std::to_string(id) + ")");
        }
        p.order = static_cast<int>(std::lround(p.flux));
        if (p.order <= 0) continue;
        if (std::abs(p.flux - p.order) >= 0.2) angle.orders_consistent = false;
        (p.kind == PointKind::Complex ? angle.P : angle.Q) += p.order;
        angle.points.push_back(p);
    }
}

Classification analyse_angle(AngleField& angle, const SurfaceDomain& dom, double tol_detect, double radius_cells,
                             double tiny) {
    const Classification cls = classify(angle, dom, tiny);
    angle.points.clear();
    angle.P = angle.Q = 0;
    if (cls != Classification::Generic) return cls;
    point_orders(angle, locate_singular_points(angle, dom, tol_detect, radius_cells), dom, radius_cells);
    return cls;
}

std::vector<bool> excision_mask(const std::vector<SingularPoint>& points, const SurfaceDomain& dom,
                                double radius_cells) {
    std::vector<bool> mask(dom.size(), false);
    const double radius = radius_cells * dom.cell_size();
    for (const auto& p : points)
        for (int k = 0; k < dom.size(); ++k)
            if (dom.distance(p.chart, p.w, chart_coordinate(dom, k, p.chart)) <= radius) mask[k] = true;
    return mask;
}

}  // namespace hermsurf
