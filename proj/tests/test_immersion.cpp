#include "hermsurf/errors.hpp"
#include "hermsurf/immersion.hpp"

#include <doctest.h>

#include <cmath>

using namespace hermsurf;

namespace {

double max_diff(const std::vector<Vec2c>& a, const std::vector<Vec2c>& b, const SurfaceDomain& dom) {
    double m = 0;
    for (int k = 0; k < dom.size(); ++k)
        if (dom.active(k)) m = std::max(m, (a[k] - b[k]).norm());
    return m;
}

}  // namespace

TEST_CASE("slanted flat torus has constant a-fields") {
    ImmersionParams p;
    p.slant = 0.6;
    const Subject s = make_subject("slanted-flat-torus", 32, p);
    const PullbackJet jet = full_jet(s);
    // f = (c w, s w̄) with c = 3/5, s = 4/5
    for (int k = 0; k < jet.size(); ++k) {
        CHECK(jet.lambda(k) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(jet.a1[k](0)) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(std::abs(jet.a1[k](1)) < 1e-12);
        CHECK(std::abs(jet.a1b[k](0)) < 1e-12);
        CHECK(std::abs(jet.a1b[k](1)) == doctest::Approx(0.8).epsilon(1e-12));
    }
    CHECK(max_norm(chern_mean_curvature(jet)) < 1e-10);
    CHECK(jet.max_conformality < 1e-12);
}

TEST_CASE("holomorphic line: induced metric of a sphere of radius 1/2") {
    const Subject s = make_subject("holomorphic-line", 64);
    const PullbackJet jet = full_jet(s);
    for (int k = 0; k < jet.size(); ++k) {
        if (!s.domain.active(k)) continue;
        const double r2 = std::norm(s.domain.node(k).w);
        CHECK(jet.lambda(k) == doctest::Approx(1.0 / (1.0 + r2)).epsilon(1e-6));
        CHECK(jet.a1b[k].norm() < 1e-10);
    }
    CHECK(max_norm(chern_mean_curvature(jet)) < 1e-6);
}

TEST_CASE("isometry and conformality identities on every built-in subject") {
    for (const std::string& name : catalogue_names()) {
        // the perturbed flow seed is not conformal by design
        if (name == "complex-line") continue;
        CAPTURE(name);
        const Subject s = make_subject(name, 64);
        const PullbackJet jet = pullback(s.map, s.domain, s.metric);
        CHECK(jet.max_conformality < 1e-8);
        for (int k = 0; k < jet.size(); ++k)
            if (s.domain.active(k)) CHECK(std::abs(jet.a1[k].squaredNorm() + jet.a1b[k].squaredNorm() - 1.0) < 1e-10);
    }
}

TEST_CASE("non-conformal maps are flagged, not thrown") {
    ImmersionParams p;
    p.trig_degree = 2;
    p.epsilon = 0.1;
    const Subject s = make_subject("random-trig", 32, p);
    const PullbackJet jet = pullback(s.map, s.domain, s.metric);
    CHECK_FALSE(jet.conformal);
    CHECK(jet.max_conformality > 1e-4);
}

TEST_CASE("a constant map is not an immersion") {
    const SurfaceDomain dom = SurfaceDomain::torus(16);
    ImmersionMap m;
    m.name = "point";
    m.core = {dom.zeros(), dom.zeros()};
    try {
        (void)pullback(m, dom, flat_torus_metric());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotImmersive);
    }
}

TEST_CASE("pointwise and frame-differentiated second-order jets agree") {
    for (unsigned seed : {1u, 2u, 3u}) {
        ImmersionParams p;
        p.seed = seed;
        const Subject s = make_subject("random-trig", 128, p);
        PullbackJet jet = full_jet(s);
        REQUIRE(jet.samples.frame_continuous);
        const SecondOrder b = covariant_jet_frame(jet, s.domain);
        CHECK(max_diff(jet.second.a11, b.a11, s.domain) < 1e-5);
        CHECK(max_diff(jet.second.a11b, b.a11b, s.domain) < 1e-5);
        CHECK(max_diff(jet.second.a1b1, b.a1b1, s.domain) < 1e-5);
        CHECK(max_diff(jet.second.a1b1b, b.a1b1b, s.domain) < 1e-5);
    }
}

TEST_CASE("Cartan relation on randomized conformal tori in the Hopf surface") {
    for (unsigned seed : {11u, 12u, 13u}) {
        ImmersionParams p;
        p.seed = seed;
        const Subject s = make_subject("random-trig", 64, p);
        const PullbackJet jet = full_jet(s);
        CHECK(cartan_residual(jet, jet.second).maxCoeff() < 1e-5);
        CHECK(cartan_residual(jet, covariant_jet_frame(jet, s.domain)).maxCoeff() < 1e-5);
    }
}

TEST_CASE("third-order Ricci identities") {
    for (const char* name : {"hopf-elliptic", "random-trig"}) {
        CAPTURE(name);
        const Subject s = make_subject(name, 64);
        const PullbackJet jet = full_jet(s);
        const auto [first, second] = check_ricci_identities(jet, s.metric, s.domain);
        CHECK(first < 1e-4);
        CHECK(second < 1e-4);
    }
}

TEST_CASE("Levi-Civita tension matches the torsion contraction") {
    const Subject s = make_subject("random-trig", 64);
    const PullbackJet jet = full_jet(s);
    const auto tension = lc_mean_curvature_tension(jet, s.metric);
    const auto contraction = lc_mean_curvature(jet);
    CHECK(max_diff(tension, contraction, s.domain) < 1e-5);
    // these tori are Levi-Civita minimal but not Chern minimal: the torsion
    // contraction cancels a nonzero H_C
    CHECK(max_norm(chern_mean_curvature(jet)) > 0.1);
    CHECK(max_norm(contraction) < 1e-8);
    // the tension is assembled from Christoffel symbols that do not vanish here
    double gamma = 0;
    for (const auto& c : real_christoffel(s.metric, jet.samples.f[0]).christoffel)
        gamma = std::max(gamma, c.cwiseAbs().maxCoeff());
    CHECK(gamma > 0.1);
}

TEST_CASE("product of circles in the unit sphere of the Hopf surface") {
    ImmersionParams p;
    p.radius = 0.6;
    const Subject s = make_subject("hopf-flat-torus", 64, p);
    const PullbackJet jet = full_jet(s);
    CHECK(jet.lambda.maxCoeff() - jet.lambda.minCoeff() < 1e-10);
    // the round unit sphere is totally geodesic in the product, so |H_LC| is
    // half the sum of the principal curvatures r2/r1 and -r1/r2
    const double expect = (0.8 / 0.6 - 0.6 / 0.8) / 2;
    const auto tension = lc_mean_curvature_tension(jet, s.metric);
    const auto contraction = lc_mean_curvature(jet);
    double off = 0;
    for (int k = 0; k < jet.size(); ++k) off = std::max(off, std::abs(tension[k].norm() - expect));
    CHECK(off < 1e-8);
    CHECK(max_diff(tension, contraction, s.domain) < 1e-8);
    p.radius = std::sqrt(0.5);
    const Subject minimal = make_subject("hopf-flat-torus", 32, p);
    CHECK(max_norm(lc_mean_curvature(full_jet(minimal))) < 1e-10);
}

TEST_CASE("Kaehler ambient: torsion contraction vanishes identically") {
    const Subject s = make_subject("clifford-torus", 32);
    const PullbackJet jet = full_jet(s);
    CHECK(max_norm(lc_mean_curvature(jet)) < 1e-12);
    CHECK(max_norm(chern_mean_curvature(jet)) < 1e-5);
    // flat induced metric
    CHECK(jet.lambda.maxCoeff() - jet.lambda.minCoeff() < 1e-10);
}

TEST_CASE("Veronese surface is minimal and totally real") {
    const Subject s = make_subject("veronese-f1", 64);
    const PullbackJet jet = full_jet(s);
    CHECK(max_norm(chern_mean_curvature(jet)) < 1e-6);
    for (int k = 0; k < jet.size(); ++k)
        if (s.domain.active(k)) CHECK(jet.a1[k].norm() == doctest::Approx(jet.a1b[k].norm()).epsilon(1e-8));
}

TEST_CASE("Hopf elliptic curve is holomorphic and Chern minimal") {
    const Subject s = make_subject("hopf-elliptic", 64);
    const PullbackJet jet = full_jet(s);
    CHECK(max_norm(jet.a1b) < 1e-10);
    CHECK(max_norm(chern_mean_curvature(jet)) < 1e-6);
}

TEST_CASE("a-field magnitudes are gauge invariant") {
    Subject s = make_subject("random-trig", 32);
    const PullbackJet plain = full_jet(s);
    s.metric.set_gauge(random_gauge(5));
    const PullbackJet gauged = full_jet(s);
    for (int k = 0; k < plain.size(); ++k) {
        CHECK(gauged.a1[k].norm() == doctest::Approx(plain.a1[k].norm()).epsilon(1e-10));
        CHECK(gauged.a1b[k].norm() == doctest::Approx(plain.a1b[k].norm()).epsilon(1e-10));
    }
    CHECK(max_norm(chern_mean_curvature(gauged)) == doctest::Approx(max_norm(chern_mean_curvature(plain))).epsilon(1e-6));
}

TEST_CASE("catalogue errors") {
    CHECK_THROWS_AS(make_subject("no-such-surface", 32), Error);
    ImmersionParams p;
    p.slant = 1.5;
    CHECK_THROWS_AS(make_subject("slanted-flat-torus", 32, p), Error);
    p = {};
    p.degree = 0;
    CHECK_THROWS_AS(make_subject("rational-curve", 32, p), Error);
    p = {};
    p.radius = 1.0;
    CHECK_THROWS_AS(make_subject("hopf-flat-torus", 32, p), Error);
}
