#include "hermsurf/errors.hpp"
#include "hermsurf/webster.hpp"

#include <doctest.h>

#include <cmath>

using namespace hermsurf;

namespace {

double max_active(const Eigen::VectorXd& v, const SurfaceDomain& dom, const std::vector<bool>* skip = nullptr) {
    double m = 0;
    for (int k = 0; k < dom.size(); ++k)
        if (dom.active(k) && !(skip && (*skip)[k])) m = std::max(m, std::abs(v(k)));
    return m;
}

Subject harmonic_sphere(int n, int degree) {
    ImmersionParams p;
    p.degree = degree;
    return make_subject("harmonic-sphere", n, p);
}

// Fourth-order chart stencils leave an O(h^3) mean curvature on this surface.
WebsterConfig loose_chern() {
    WebsterConfig c;
    c.tol_chern = 1e-3;
    return c;
}

}  // namespace

TEST_CASE("wolfson bound arithmetic") {
    const WolfsonBound torus = wolfson_bound(1, 0, 0, 0, 0, 0);
    CHECK(torus.lhs == 0);
    CHECK(torus.middle == 0);
    CHECK(torus.holds);
    // totally real sphere with normal Euler number -2 and no double points
    const WolfsonBound sphere = wolfson_bound(0, 0, -2, 0, 0, 0);
    CHECK(sphere.lhs == 0);
    CHECK(sphere.holds);
    // embedded sphere in the class of a cubic: I = 2g0 - 1 with g0 = 1
    const WolfsonBound cubic = wolfson_bound(0, 3, 1, 0, 0, 0);
    CHECK(cubic.lhs == 6);
    CHECK_FALSE(cubic.holds);
    // the middle term is -2 min(P, Q)
    CHECK(wolfson_bound(1, 0, 0, 0, 3, 2).middle == -4);
}

TEST_CASE("slanted flat torus: every term vanishes") {
    const Subject s = make_subject("slanted-flat-torus", 64);
    const WebsterReport r = verify(s, full_jet(s));
    CHECK(r.classification == Classification::Generic);
    CHECK(r.accepted);
    CHECK(r.P == 0);
    CHECK(r.Q == 0);
    CHECK(std::abs(r.chi_T) < 1e-8);
    CHECK(std::abs(r.chi_N) < 1e-8);
    CHECK(r.residual_difference < 1e-6);
    CHECK(r.residual_sum < 1e-6);
    CHECK(r.pointwise_laplacian_residual < 1e-6);
    CHECK(r.sup_k_plus_kperp < 1e-6);
    const ConstantAngle ca = constant_angle_check(r);
    CHECK(ca.is_constant_real);
    CHECK(ca.consistent);
}

TEST_CASE("round conformal factor has unit curvature") {
    const SurfaceDomain dom = SurfaceDomain::sphere(128);
    Eigen::VectorXd lam(dom.size());
    for (int k = 0; k < dom.size(); ++k) lam(k) = 2.0 / (1.0 + std::norm(dom.node(k).w));
    const Eigen::VectorXd k = gauss_curvature_classical(lam, dom);
    CHECK(max_active((k.array() - 1.0).matrix(), dom) < 1e-5);
    const EulerNumbers e = euler_numbers(k, Eigen::VectorXd::Zero(dom.size()), dom, lam);
    CHECK(std::abs(e.chi_T - 2.0) < 1e-3);
}

TEST_CASE("Clifford torus is flat with flat normal bundle") {
    const Subject s = make_subject("clifford-torus", 64);
    const PullbackJet jet = full_jet(s);
    CHECK(max_active(gauss_curvature(jet, s.domain), s.domain) < 1e-5);
    CHECK(max_active(normal_curvature(jet, s.metric), s.domain) < 1e-4);
    const WebsterReport r = verify(s, jet);
    CHECK(r.accepted);
    CHECK(std::abs(r.alpha_min - kPi / 2) < 1e-6);
    CHECK(std::abs(r.alpha_max - kPi / 2) < 1e-6);
    const ConstantAngle ca = constant_angle_check(r);
    CHECK(ca.is_constant_real);
    CHECK(ca.sup_k_plus_kperp < 1e-4);
    CHECK(ca.consistent);
}

TEST_CASE("Veronese sphere: Euler numbers (2, -2) and zero first Chern number") {
    const Subject s = make_subject("veronese-f1", 64);
    const PullbackJet jet = full_jet(s);
    const WebsterReport r = verify(s, jet);
    CHECK(r.classification == Classification::Generic);
    CHECK(r.accepted);
    CHECK(r.P == 0);
    CHECK(r.Q == 0);
    CHECK(std::abs(r.chi_T - 2) < 0.05);
    CHECK(std::abs(r.chi_N + 2) < 0.05);
    CHECK(std::abs(r.c1) < 0.05);
    CHECK(r.residual_difference < 0.05);
    CHECK(r.residual_sum < 0.05);
    // three independent routes to K
    const Eigen::VectorXd k = gauss_curvature(jet, s.domain);
    const Eigen::VectorXd kc = gauss_curvature_classical(jet.lambda, s.domain);
    const Eigen::VectorXd kx = gauss_curvature_extrinsic(jet, s.metric);
    CHECK(max_active(k - kc, s.domain) < 1e-3);
    CHECK(max_active(k - kx, s.domain) < 1e-3);
}

TEST_CASE("rational curves pair with c1 as 3d and are skipped") {
    for (int d : {1, 2}) {
        CAPTURE(d);
        ImmersionParams p;
        p.degree = d;
        const Subject s = make_subject("rational-curve", 128, p);
        const PullbackJet jet = full_jet(s);
        CHECK(max_norm(chern_mean_curvature(jet)) < 1e-6);
        const WebsterReport r = verify(s, jet);
        CHECK(r.classification == Classification::Holomorphic);
        CHECK(r.skipped);
        CHECK_FALSE(r.accepted);
        CHECK(std::abs(r.c1 - 3 * d) < 1e-3);
    }
}

TEST_CASE("harmonic sphere: a generic subject with singular points") {
    const Subject s = harmonic_sphere(128, 2);
    const PullbackJet jet = full_jet(s);
    const WebsterReport r = verify(s, jet, loose_chern());
    REQUIRE(r.classification == Classification::Generic);
    CHECK(r.accepted);
    CHECK(r.P == 1);
    CHECK(r.Q == 1);
    CHECK(r.c1_round == 0);
    CHECK(r.chi_T_round == 2);
    CHECK(r.chi_N_round == -4);
    CHECK(r.residual_difference < 0.1);
    CHECK(r.residual_sum < 0.1);
    // the angle is not constant, so K + K⊥ cannot vanish
    const ConstantAngle ca = constant_angle_check(r);
    CHECK_FALSE(ca.is_constant_real);
    CHECK(ca.sup_k_plus_kperp > 1e-4);
    CHECK(ca.consistent);
}

TEST_CASE("normal curvature: Ricci equation against the adapted frame") {
    const Subject s = harmonic_sphere(128, 2);
    const PullbackJet jet = full_jet(s);
    AngleField angle = kahler_angle(jet);
    analyse_angle(angle, s.domain);
    REQUIRE(angle.points.size() == 2);
    const std::vector<bool> excised = excision_mask(angle.points, s.domain, 12);
    const AdaptedCurvature ad = normal_curvature_adapted(jet, s.metric, s.domain, excised);
    const Eigen::VectorXd kp = normal_curvature(jet, s.metric);
    CHECK(ad.rho_residual < 1e-3);
    CHECK(max_active(ad.k_perp - kp, s.domain, &ad.mask) < 5e-3);
    CHECK(max_active(ad.k_structure - kp, s.domain, &ad.mask) < 5e-3);
}

TEST_CASE("adapted frame refuses complex points that are not excised") {
    const Subject s = make_subject("holomorphic-line", 64);
    const PullbackJet jet = full_jet(s);
    const std::vector<bool> none(s.domain.size(), false);
    try {
        (void)normal_curvature_adapted(jet, s.metric, s.domain, none);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AdaptedFrameDegenerate);
    }
}

TEST_CASE("Kaehler balance of the angle Laplacians") {
    // Δ log tan(α/2) equals the pulled-back Ricci density when θ_L = 0
    for (const char* name : {"veronese-f1", "clifford-torus"}) {
        CAPTURE(name);
        const Subject s = make_subject(name, 64);
        CHECK(verify(s, full_jet(s)).pointwise_balance_residual < 1e-5);
    }
    // nonconstant angle: second-order convergence
    const Subject coarse = harmonic_sphere(64, 1), fine = harmonic_sphere(128, 1);
    const double r1 = verify(coarse, full_jet(coarse)).pointwise_balance_residual;
    const double r2 = verify(fine, full_jet(fine)).pointwise_balance_residual;
    CHECK(r2 < 1e-3);
    CHECK(r1 / r2 > 4.0);
}

TEST_CASE("Stokes integral of d theta_L vanishes where theta_L does not") {
    for (const char* name : {"random-trig", "hopf-elliptic"}) {
        CAPTURE(name);
        const Subject s = make_subject(name, 64);
        const PullbackJet jet = full_jet(s);
        CHECK(std::abs(stokes_integral(s.metric, jet, s.domain)) < 1e-4);
        double theta = 0;
        for (int k = 0; k < jet.size(); ++k) theta = std::max(theta, theta_L(s.metric, jet.samples.f[k]).norm());
        CHECK(theta > 0.1);
    }
}

TEST_CASE("first Chern pairing vanishes in a flat ambient") {
    const Subject s = make_subject("slanted-flat-torus", 32);
    CHECK(std::abs(c1_pairing(s.metric, full_jet(s), s.domain)) < 1e-12);
}

TEST_CASE("torsion product identity in the Hopf surface") {
    const Subject s = make_subject("hopf-elliptic", 64);
    const PullbackJet jet = full_jet(s);
    const std::vector<bool> none(s.domain.size(), false);
    CHECK(torsion_product_residual(jet, s.metric, none) < 1e-4);
}

TEST_CASE("non Chern-minimal subjects get a partial report") {
    const Subject s = make_subject("random-trig", 32);
    const WebsterReport r = verify(s, full_jet(s));
    CHECK(r.classification == Classification::NotChernMinimal);
    CHECK(r.skipped);
    CHECK_FALSE(r.accepted);
    CHECK(r.stokes_residual < 1e-4);
}

TEST_CASE("verification needs second-order jets") {
    const Subject s = make_subject("slanted-flat-torus", 32);
    const PullbackJet jet = pullback(s.map, s.domain, s.metric);
    CHECK_THROWS_AS(verify(s, jet), Error);
}

TEST_CASE("excision larger than the allowed fraction is refused") {
    const SurfaceDomain dom = SurfaceDomain::torus(32);
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(dom.size());
    std::vector<bool> mask(dom.size(), false);
    for (int k = 0; k < dom.size() / 10; ++k) mask[k] = true;
    try {
        (void)euler_numbers(one, one, dom, one, &mask);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ExcisionTooLarge);
    }
    const EulerNumbers e = euler_numbers(one, one, dom, one, &mask, 1.0);
    CHECK(e.excised_fraction == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("Euler numbers survive a change of unitary gauge") {
    Subject s = make_subject("veronese-f1", 64);
    const WebsterReport plain = verify(s, full_jet(s));
    s.metric.set_gauge(random_gauge(3));
    const WebsterReport gauged = verify(s, full_jet(s));
    CHECK(gauged.chi_N == doctest::Approx(plain.chi_N).epsilon(1e-6));
    CHECK(gauged.c1 == doctest::Approx(plain.c1).scale(1.0).epsilon(1e-6));
}
