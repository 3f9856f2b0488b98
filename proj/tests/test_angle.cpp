#include "hermsurf/angle.hpp"
#include "hermsurf/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace hermsurf;

namespace {

struct Synthetic {
    std::vector<Vec2c> a1, a1b;
};

// Chart 0 carries the planted fields; chart 1 is kept regular.
Synthetic plant(const SurfaceDomain& dom, const std::function<cplx(cplx)>& hol,
                const std::function<cplx(cplx)>& anti) {
    Synthetic s;
    for (int k = 0; k < dom.size(); ++k) {
        const Node& n = dom.node(k);
        const cplx a = n.chart == 0 ? hol(n.w) : 1.0;
        const cplx b = n.chart == 0 ? anti(n.w) : 0.5;
        s.a1.emplace_back(a, 0.0);
        s.a1b.emplace_back(0.0, b);
    }
    return s;
}

ErrorKind error_kind(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("planted complex points of orders 1, 2, 3") {
    const SurfaceDomain dom = SurfaceDomain::sphere(128);
    const cplx w0(0.21, -0.17);
    for (int p : {1, 2, 3}) {
        CAPTURE(p);
        // small amplitude keeps sin(α/2) ≈ |a1b| on the flux circle; the cubic
        // needs a larger one so its sublevel set stays inside the radius
        const double amp = p == 3 ? 2.0 : 0.5;
        const Synthetic s = plant(dom, [](cplx) { return cplx(1.0); },
                                  [&](cplx w) { return amp * std::pow(w - w0, p) * (1.0 + 0.1 * w); });
        AngleField a = kahler_angle(s.a1, s.a1b);
        REQUIRE(analyse_angle(a, dom) == Classification::Generic);
        REQUIRE(a.points.size() == 1);
        CHECK(a.points[0].kind == PointKind::Complex);
        CHECK(a.points[0].order == p);
        CHECK(std::abs(a.points[0].flux - p) < 0.05);
        CHECK(std::abs(a.points[0].w - w0) < 2 * dom.cell_size());
        CHECK(a.P == p);
        CHECK(a.Q == 0);
        CHECK(a.orders_consistent);
    }
}

TEST_CASE("complex and anticomplex points are counted separately") {
    const SurfaceDomain dom = SurfaceDomain::sphere(128);
    const cplx wc(-0.4, 0.3), wa(0.45, 0.1);
    const Synthetic s = plant(dom, [&](cplx w) { return std::conj(w - wa) * std::conj(w - wa); },
                              [&](cplx w) { return w - wc; });
    AngleField a = kahler_angle(s.a1, s.a1b);
    REQUIRE(analyse_angle(a, dom) == Classification::Generic);
    CHECK(a.P == 1);
    CHECK(a.Q == 2);
    CHECK(a.points.size() == 2);
    // α = 0 at complex points and π at anticomplex points
    for (const auto& pt : a.points) CHECK(a.alpha(pt.node) == doctest::Approx(pt.kind == PointKind::Complex ? 0.0 : kPi).epsilon(0.05));
}

TEST_CASE("orders are stable when the flux radius grows by half") {
    const SurfaceDomain dom = SurfaceDomain::sphere(128);
    const cplx w0(0.05, 0.3);
    const Synthetic s = plant(dom, [](cplx) { return cplx(1.0); }, [&](cplx w) { return (w - w0) * (w - w0); });
    AngleField a6 = kahler_angle(s.a1, s.a1b), a9 = a6;
    analyse_angle(a6, dom, 1e-3, 6);
    analyse_angle(a9, dom, 1e-3, 9);
    REQUIRE(a6.points.size() == 1);
    REQUIRE(a9.points.size() == 1);
    CHECK(a6.P == a9.P);
    CHECK(std::abs(a6.points[0].flux - a9.points[0].flux) < 0.05);
}

TEST_CASE("holomorphic fields refuse point location") {
    const SurfaceDomain dom = SurfaceDomain::sphere(64);
    std::vector<Vec2c> a1(dom.size(), Vec2c(1.0, 0.0)), a1b(dom.size(), Vec2c::Zero());
    AngleField a = kahler_angle(a1, a1b);
    CHECK(classify(a, dom) == Classification::Holomorphic);
    CHECK(error_kind([&] { (void)locate_singular_points(a, dom); }) == ErrorKind::NonIsolatedZeroSuspected);
    std::swap(a1, a1b);
    AngleField b = kahler_angle(a1, a1b);
    CHECK(classify(b, dom) == Classification::Antiholomorphic);
    CHECK(error_kind([&] { (void)locate_singular_points(b, dom); }) == ErrorKind::NonIsolatedZeroSuspected);
    // analyse_angle reports the class without points
    CHECK(analyse_angle(b, dom) == Classification::Antiholomorphic);
    CHECK(b.points.empty());
}

TEST_CASE("a curve of zeros is not isolated") {
    const SurfaceDomain dom = SurfaceDomain::sphere(64);
    const Synthetic s = plant(dom, [](cplx) { return cplx(1.0); }, [](cplx w) { return cplx(w.real() - 0.2, 0.0); });
    AngleField a = kahler_angle(s.a1, s.a1b);
    CHECK(error_kind([&] { (void)locate_singular_points(a, dom); }) == ErrorKind::NonIsolatedZeroSuspected);
}

TEST_CASE("slanted torus has no singular points and constant angle") {
    const Subject s = make_subject("slanted-flat-torus", 32);
    AngleField a = kahler_angle(full_jet(s));
    CHECK(analyse_angle(a, s.domain) == Classification::Generic);
    CHECK(a.points.empty());
    CHECK(a.P == 0);
    CHECK(a.Q == 0);
    const double expect = 2 * std::acos(0.6);
    CHECK((a.alpha.array() - expect).abs().maxCoeff() < 1e-10);
    CHECK((a.cos2 + a.sin2 - Eigen::VectorXd::Ones(a.cos2.size())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Kaehler angle is invariant under a change of unitary gauge") {
    Subject s = make_subject("random-trig", 32);
    const AngleField plain = kahler_angle(full_jet(s));
    s.metric.set_gauge(random_gauge(9));
    const AngleField gauged = kahler_angle(full_jet(s));
    CHECK((plain.alpha - gauged.alpha).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("harmonic sphere has one complex and one anticomplex point") {
    ImmersionParams p;
    p.degree = 2;
    const Subject s = make_subject("harmonic-sphere", 128, p);
    AngleField a = kahler_angle(full_jet(s));
    REQUIRE(analyse_angle(a, s.domain) == Classification::Generic);
    CHECK(a.P == 1);
    CHECK(a.Q == 1);
    CHECK(a.orders_consistent);
    // one at each pole
    for (const auto& pt : a.points) CHECK(std::abs(pt.w) < 2 * s.domain.cell_size());
    CHECK(a.points.size() == 2);
    CHECK(a.points[0].chart != a.points[1].chart);
}

TEST_CASE("excision mask covers the disks around the points") {
    const SurfaceDomain dom = SurfaceDomain::sphere(64);
    SingularPoint pt;
    pt.chart = 0;
    pt.w = cplx(0.3, 0.2);
    const auto mask = excision_mask({pt}, dom, 4);
    const double r = 4 * dom.cell_size();
    int count = 0;
    for (int k = 0; k < dom.size(); ++k) {
        if (dom.node(k).chart != 0) continue;
        CHECK(mask[k] == (std::abs(dom.node(k).w - pt.w) <= r));
        count += mask[k];
    }
    // about π r^2 / h^2 nodes
    CHECK(count == doctest::Approx(kPi * 16).epsilon(0.15));
}

TEST_CASE("names") {
    CHECK(to_string(PointKind::Anticomplex) == "anticomplex");
    CHECK(to_string(Classification::NotChernMinimal) == "not-chern-minimal");
}
