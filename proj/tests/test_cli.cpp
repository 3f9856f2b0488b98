#include "hermsurf/errors.hpp"
#include "hermsurf/expr.hpp"
#include "hermsurf/plot.hpp"
#include "hermsurf/scene.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

using namespace hermsurf;
namespace fs = std::filesystem;

namespace {

ErrorKind error_kind(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IoError;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hermsurf_" + name);
    fs::remove_all(p);
    return p.string();
}

}  // namespace

TEST_CASE("scene keys with sections and comments") {
    const auto kv = parse_key_values("# comment\nname = a\n\n[tol]\nchern = 1e-5  # trailing\n[flow]\nrun = true\n");
    CHECK(kv.at("name") == "a");
    CHECK(kv.at("tol.chern") == "1e-5");
    CHECK(kv.at("flow.run") == "true");
    const Scene s = parse_scene("name = t\nimmersion = clifford-torus\ngrid = 64\n[tol]\nchern = 1e-5\n");
    CHECK(s.name == "t");
    CHECK(s.immersion == "clifford-torus");
    CHECK(s.grid == 64);
    CHECK(s.webster.tol_chern == 1e-5);
}

TEST_CASE("scene errors") {
    CHECK(error_kind([] { (void)parse_scene("colour = red\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("grid = 64\ngrid = 128\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("grid = 100\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("grid = 1024\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("grid = sixty\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("[tol]\nchern = -1\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("[metric\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("just words\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("[metric]\ng11 = 1\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)parse_scene("name = ../escape\n"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { (void)load_scene("/nonexistent/file.scene"); }) == ErrorKind::ConfigError);
}

TEST_CASE("shipped scenes parse") {
    for (const auto& entry : fs::directory_iterator(HERMSURF_SCENE_DIR)) {
        if (entry.path().extension() != ".scene") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW((void)load_scene(entry.path().string()));
    }
}

TEST_CASE("expression values and exact first derivatives") {
    const Expression e = Expression::parse("exp(z1 * zb2) / (1 + r2) + sin(x1)^2 - conj(z2) * im(z1) + pi * i");
    const auto ref = [](const ChartPoint& p) {
        const cplx z1 = p(0), z2 = p(1);
        const double r2 = std::norm(z1) + std::norm(z2);
        return std::exp(z1 * std::conj(z2)) / (1.0 + r2) + std::pow(std::sin(z1.real()), 2) - std::conj(z2) * z1.imag() +
               kPi * kI;
    };
    const ChartPoint p(cplx(0.3, -0.4), cplx(0.7, 0.2));
    const Dual v = e.eval(dual_coordinates(p));
    CHECK(std::abs(v.v - ref(p)) < 1e-14);
    // dual parts are derivatives along x1 y1 x2 y2; central differences as the oracle
    const double h = 1e-5;
    for (int a = 0; a < 4; ++a) {
        const cplx fd = (ref(shifted(p, a, h)) - ref(shifted(p, a, -h))) / (2 * h);
        CHECK(std::abs(v.d[a] - fd) < 1e-8);
    }
}

TEST_CASE("expression parse errors") {
    for (const char* bad : {"", "1 +", "(z1", "foo(z1)", "z3", "z1 ^ 0.5", "1 2", "z1 $ 2"}) {
        CAPTURE(bad);
        CHECK(error_kind([&] { (void)Expression::parse(bad); }) == ErrorKind::ConfigError);
    }
}

TEST_CASE("expression metric reproduces the Hopf metric") {
    const MetricField m = metric_from_expressions("e", "1 / r2", "0", "1 / r2");
    const MetricField hopf = hopf_metric();
    CHECK_FALSE(m.kahler());
    const ChartPoint p(cplx(0.8, 0.1), cplx(-0.3, 0.6));
    CHECK((m.eval(p) - hopf.eval(p)).norm() < 1e-14);
    CHECK((chern_connection(m, p).torsion.l12 - chern_connection(hopf, p).torsion.l12).norm() < 1e-8);
    CHECK(error_kind([] { (void)metric_from_expressions("e", "1", "(z1", "1"); }) == ErrorKind::ConfigError);
}

TEST_CASE("run_scene writes a report and exits cleanly") {
    const std::string dir = scratch_dir("run");
    Scene s = parse_scene("name = clifford\nimmersion = clifford-torus\ngrid = 32\n");
    s.output_dir = dir;
    s.dump_fields = true;
    const SceneResult r = run_scene(s);
    CHECK(r.exit_code == 0);
    CHECK(r.report.accepted);
    CHECK(fs::exists(r.report_path));
    const std::string text = slurp(r.report_path);
    CHECK(text.find("verification = ACCEPTED") != std::string::npos);
    CHECK(text.find("exit_code = 0") != std::string::npos);
    CHECK(text.find("dump.alpha = clifford.alpha.hscp") != std::string::npos);
    for (const auto& d : r.dumps) CHECK(fs::exists(d));
    fs::remove_all(dir);
}

TEST_CASE("non Chern-minimal scenes exit with status 1") {
    const std::string dir = scratch_dir("reject");
    Scene s = parse_scene("name = trig\nimmersion = random-trig\ngrid = 32\n");
    s.output_dir = dir;
    const SceneResult r = run_scene(s);
    CHECK(r.exit_code == 1);
    CHECK(slurp(r.report_path).find("classification = not-chern-minimal") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("reports are byte-identical across runs") {
    const std::string a = scratch_dir("det_a"), b = scratch_dir("det_b");
    Scene s = parse_scene("name = v\nimmersion = veronese-f1\ngrid = 32\n");
    s.output_dir = a;
    const std::string first = slurp(run_scene(s).report_path);
    s.output_dir = b;
    const std::string second = slurp(run_scene(s).report_path);
    CHECK(first.size() > 100);
    CHECK(first == second);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("plots are rendered from the dumps a report lists") {
    const std::string dir = scratch_dir("plot");
    Scene s = parse_scene("name = slant\nimmersion = slanted-flat-torus\ngrid = 32\n");
    s.output_dir = dir;
    s.emit_plots = true;
    const SceneResult r = run_scene(s);
    REQUIRE_FALSE(r.images.empty());
    for (const auto& img : r.images) {
        CHECK(fs::exists(img));
        CHECK(slurp(img).rfind("P6", 0) == 0);
    }
    // removing a listed dump is reported, not ignored
    fs::remove(r.dumps.front());
    CHECK(error_kind([&] { (void)plot_report(r.report_path, dir); }) == ErrorKind::MissingDump);
    fs::remove_all(dir);
}

TEST_CASE("heatmap size and marks") {
    const std::string dir = scratch_dir("heat");
    fs::create_directories(dir);
    const std::string path = (fs::path(dir) / "h.ppm").string();
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(12, -1, 1);
    write_heatmap(path, v, 4, 3, -1, 1, {{1, 1}}, 2);
    const std::string data = slurp(path);
    const std::string header = "P6\n8 6\n255\n";
    REQUIRE(data.rfind(header, 0) == 0);
    CHECK(data.size() == header.size() + 8 * 6 * 3);
    fs::remove_all(dir);
}
