#include "hermsurf/errors.hpp"
#include "hermsurf/flow.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace hermsurf;

namespace {

Subject seed(int n, double eps) {
    ImmersionParams p;
    p.epsilon = eps;
    return make_subject("complex-line", n, p);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("exact solutions have zero energy and penalty") {
    const Subject line = seed(32, 0.0);
    const Energy e = energy(line.map, line.metric, line.domain);
    CHECK(e.energy < 1e-20);
    CHECK(e.penalty < 1e-20);
    const Subject slanted = make_subject("slanted-flat-torus", 32);
    const Energy es = energy(slanted.map, slanted.metric, slanted.domain);
    CHECK(es.energy < 1e-20);
    CHECK(es.penalty < 1e-20);
}

TEST_CASE("perturbed seed has positive energy of order epsilon squared") {
    const Energy e1 = [] { const Subject s = seed(32, 1e-2); return energy(s.map, s.metric, s.domain); }();
    const Energy e2 = [] { const Subject s = seed(32, 2e-2); return energy(s.map, s.metric, s.domain); }();
    CHECK(e1.energy > 0);
    CHECK(e2.energy / e1.energy == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("an exact seed is a fixed point") {
    const Subject s = make_subject("slanted-flat-torus", 32);
    const FlowState st = minimize(s.map, s.metric, s.domain);
    CHECK(st.iterations == 0);
    CHECK_FALSE(st.stalled);
    for (int c = 0; c < 2; ++c) CHECK((st.map.core[c] - s.map.core[c]).norm() == 0.0);
}

TEST_CASE("descent is monotone and reduces the objective") {
    const Subject s = seed(32, 1e-2);
    FlowConfig cfg;
    cfg.max_iter = 15;
    const FlowState st = minimize(s.map, s.metric, s.domain, cfg);
    REQUIRE(st.history.size() >= 2);
    for (size_t i = 1; i < st.history.size(); ++i) {
        const double before = st.history[i - 1].energy + cfg.beta * st.history[i - 1].penalty;
        const double after = st.history[i].energy + cfg.beta * st.history[i].penalty;
        CHECK(after < before);
    }
    const double start = st.history.front().energy + cfg.beta * st.history.front().penalty;
    MESSAGE("objective " << start << " -> " << st.objective(cfg.beta) << " in " << st.iterations << " steps");
    CHECK(st.objective(cfg.beta) < 0.1 * start);
}

TEST_CASE("mode bookkeeping") {
    FlowConfig cfg;
    cfg.band = 1;
    // 8 nonzero wave vectors, 2 planes, real and imaginary parts
    CHECK(mode_count(cfg) == 32);
    cfg.band = 2;
    CHECK(mode_count(cfg) == 96);
    const Subject s = seed(16, 0.0);
    cfg.band = 1;
    const ImmersionMap same = perturb_modes(s.map, s.domain, cfg, Eigen::VectorXd::Zero(mode_count(cfg)));
    CHECK((same.core[0] - s.map.core[0]).norm() == 0.0);
}

TEST_CASE("flow refuses sphere subjects and a non-positive weight") {
    const Subject sphere = make_subject("holomorphic-line", 32);
    CHECK_THROWS_AS(minimize(sphere.map, sphere.metric, sphere.domain), Error);
    const Subject s = seed(16, 1e-2);
    FlowConfig cfg;
    cfg.beta = 0;
    CHECK_THROWS_AS(minimize(s.map, s.metric, s.domain, cfg), Error);
}

TEST_CASE("plane files round-trip bit for bit") {
    PlaneFile f;
    f.nx = 3;
    f.ny = 2;
    f.planes = {Eigen::VectorXd::LinSpaced(6, -1.0, 1.0), Eigen::VectorXd::Constant(6, std::acos(-1.0))};
    const std::string path = temp_path("hermsurf_planes.bin");
    write_planes(path, f);
    CHECK(std::filesystem::file_size(path) == 20 + 2 * 6 * 8);
    const PlaneFile g = read_planes(path);
    CHECK(g.nx == 3);
    CHECK(g.ny == 2);
    REQUIRE(g.planes.size() == 2);
    for (int p = 0; p < 2; ++p) CHECK((g.planes[p] - f.planes[p]).norm() == 0.0);
    std::filesystem::remove(path);
}

TEST_CASE("checkpoints restore the map") {
    const Subject s = seed(16, 3e-2);
    FlowState st;
    st.map = s.map;
    const std::string path = temp_path("hermsurf_checkpoint.bin");
    save_checkpoint(path, st, s.domain);
    const ImmersionMap back = load_checkpoint(path, s.map, s.domain);
    for (int c = 0; c < 2; ++c) CHECK((back.core[c] - s.map.core[c]).cwiseAbs().maxCoeff() < 1e-12);
    const Subject other = seed(32, 3e-2);
    CHECK_THROWS_AS(load_checkpoint(path, other.map, other.domain), Error);
    std::filesystem::remove(path);
}

TEST_CASE("missing and corrupt plane files") {
    try {
        (void)read_planes(temp_path("hermsurf_no_such_file.bin"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingDump);
    }
    const std::string path = temp_path("hermsurf_bad.bin");
    {
        std::ofstream os(path, std::ios::binary);
        os << "HSCPxx";
    }
    try {
        (void)read_planes(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IoError);
    }
    std::filesystem::remove(path);
}
