#include "hermsurf/scene.hpp"

#include "hermsurf/errors.hpp"
#include "hermsurf/expr.hpp"
#include "hermsurf/plot.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hermsurf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ConfigError, "scene: '" + key + "' expects a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw Error(ErrorKind::ConfigError, "scene: '" + key + "' expects an integer");
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw Error(ErrorKind::ConfigError, "scene: '" + key + "' expects true or false");
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string fmt(cplx v) { return fmt(v.real()) + " " + fmt(v.imag()); }

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(ErrorKind::ConfigError, "scene: malformed section header on line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ConfigError, "scene: expected 'key = value' on line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::ConfigError, "scene: empty key on line " + std::to_string(lineno));
        if (!section.empty()) key = section + "." + key;
        if (out.count(key)) throw Error(ErrorKind::ConfigError, "scene: duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

Scene parse_scene(const std::string& text) {
    Scene s;
    for (const auto& [k, v] : parse_key_values(text)) {
        if (k == "name") s.name = v;
        else if (k == "metric" || k == "metric.name") s.metric = v;
        else if (k == "metric.g11") s.g11 = v;
        else if (k == "metric.g12") s.g12 = v;
        else if (k == "metric.g22") s.g22 = v;
        else if (k == "immersion" || k == "immersion.name") s.immersion = v;
        else if (k == "immersion.slant") s.params.slant = to_double(k, v);
        else if (k == "immersion.lattice_scale") s.params.lattice_scale = to_double(k, v);
        else if (k == "immersion.degree") s.params.degree = to_int(k, v);
        else if (k == "immersion.trig_degree") s.params.trig_degree = to_int(k, v);
        else if (k == "immersion.epsilon") s.params.epsilon = to_double(k, v);
        else if (k == "immersion.radius") s.params.radius = to_double(k, v);
        else if (k == "seed" || k == "immersion.seed") s.params.seed = static_cast<unsigned>(to_int(k, v));
        else if (k == "grid") s.grid = to_int(k, v);
        else if (k == "tol.detect") s.webster.tol_detect = to_double(k, v);
        else if (k == "tol.chern") s.webster.tol_chern = to_double(k, v);
        else if (k == "tol.holomorphic") s.webster.tol_holomorphic = to_double(k, v);
        else if (k == "tol.rounding") s.webster.rounding_gap = to_double(k, v);
        else if (k == "webster.winding_radius") s.webster.winding_radius = to_double(k, v);
        else if (k == "webster.excision_radius") s.webster.excision_radius = to_double(k, v);
        else if (k == "flow.run") s.run_flow = to_bool(k, v);
        else if (k == "flow.beta") s.flow.beta = to_double(k, v);
        else if (k == "flow.max_iter") s.flow.max_iter = to_int(k, v);
        else if (k == "flow.band") s.flow.band = to_int(k, v);
        else if (k == "flow.objective_tol") s.flow.objective_tol = to_double(k, v);
        else if (k == "output.dir") s.output_dir = v;
        else if (k == "output.plots") s.emit_plots = to_bool(k, v);
        else if (k == "output.dump_fields") s.dump_fields = to_bool(k, v);
        else throw Error(ErrorKind::ConfigError, "scene: unknown key '" + k + "'");
    }
    if (!s.g11.empty() && (s.g12.empty() || s.g22.empty()))
        throw Error(ErrorKind::ConfigError, "scene: an expression metric needs g11, g12 and g22");
    validate(s);
    return s;
}

Scene load_scene(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::ConfigError, "scene: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_scene(ss.str());
}

void validate(const Scene& s) {
    if (s.grid < 32 || s.grid > 512 || (s.grid & (s.grid - 1)) != 0)
        throw Error(ErrorKind::ConfigError, "scene: grid must be a power of two in [32, 512]");
    const WebsterConfig& w = s.webster;
    for (double t : {w.tol_detect, w.tol_chern, w.tol_holomorphic, w.rounding_gap, w.winding_radius, w.excision_radius, s.flow.beta,
                     s.flow.objective_tol})
        if (!(t > 0)) throw Error(ErrorKind::ConfigError, "scene: tolerances must be positive");
    if (s.flow.max_iter < 0 || s.flow.band < 1) throw Error(ErrorKind::ConfigError, "scene: bad flow settings");
    if (s.name.empty() || s.name.find('/') != std::string::npos)
        throw Error(ErrorKind::ConfigError, "scene: name must be a plain file stem");
}

std::string format_report(const Scene& s, const WebsterReport& r, const SceneResult& res) {
    std::ostringstream os;
    os << "# hermsurf report\n";
    os << "config.name = " << s.name << "\n";
    os << "config.metric = " << (s.g11.empty() ? (s.metric.empty() ? "(subject default)" : s.metric) : "expression")
       << "\n";
    if (!s.g11.empty()) {
        os << "config.metric.g11 = " << s.g11 << "\n";
        os << "config.metric.g12 = " << s.g12 << "\n";
        os << "config.metric.g22 = " << s.g22 << "\n";
    }
    os << "config.immersion = " << s.immersion << "\n";
    os << "config.immersion.slant = " << fmt(s.params.slant) << "\n";
    os << "config.immersion.lattice_scale = " << fmt(s.params.lattice_scale) << "\n";
    os << "config.immersion.degree = " << s.params.degree << "\n";
    os << "config.immersion.trig_degree = " << s.params.trig_degree << "\n";
    os << "config.immersion.epsilon = " << fmt(s.params.epsilon) << "\n";
    os << "config.immersion.radius = " << fmt(s.params.radius) << "\n";
    os << "config.seed = " << s.params.seed << "\n";
    os << "config.grid = " << s.grid << "\n";
    os << "config.tol.detect = " << fmt(s.webster.tol_detect) << "\n";
    os << "config.tol.chern = " << fmt(s.webster.tol_chern) << "\n";
    os << "config.tol.holomorphic = " << fmt(s.webster.tol_holomorphic) << "\n";
    os << "config.tol.rounding = " << fmt(s.webster.rounding_gap) << "\n";
    os << "config.webster.winding_radius = " << fmt(s.webster.winding_radius) << "\n";
    os << "config.webster.excision_radius = " << fmt(s.webster.excision_radius) << "\n";
    os << "config.flow.run = " << (s.run_flow ? "true" : "false") << "\n";
    os << "config.flow.beta = " << fmt(s.flow.beta) << "\n";
    os << "config.flow.max_iter = " << s.flow.max_iter << "\n";
    os << "config.flow.band = " << s.flow.band << "\n";
    os << "config.flow.objective_tol = " << fmt(s.flow.objective_tol) << "\n";
    os << "config.output.plots = " << (s.emit_plots ? "true" : "false") << "\n";
    os << "config.output.dump_fields = " << (s.dump_fields ? "true" : "false") << "\n";

    if (res.flow_ran) {
        os << "flow.iterations = " << res.flow.iterations << "\n";
        os << "flow.energy = " << fmt(res.flow.energy) << "\n";
        os << "flow.penalty = " << fmt(res.flow.penalty) << "\n";
        os << "flow.stalled = " << (res.flow.stalled ? "true" : "false") << "\n";
    }
    os << "classification = " << to_string(r.classification) << "\n";
    os << "verification = " << (r.skipped ? "SKIPPED" : (r.accepted ? "ACCEPTED" : "REJECTED")) << "\n";
    os << "chern_mean_curvature = " << fmt(r.chern_mean_curvature) << "\n";
    os << "alpha.min = " << fmt(r.alpha_min) << "\n";
    os << "alpha.max = " << fmt(r.alpha_max) << "\n";
    os << "c1_pairing = " << fmt(r.c1) << "\n";
    os << "c1_pairing.round = " << r.c1_round << "\n";
    os << "stokes_residual = " << fmt(r.stokes_residual) << "\n";
    os << "gauss_crosscheck = " << fmt(r.gauss_crosscheck) << "\n";
    if (r.classification != Classification::NotChernMinimal) {
        os << "P = " << r.P << "\n";
        os << "Q = " << r.Q << "\n";
        os << "chi_T = " << fmt(r.chi_T) << "\n";
        os << "chi_T.round = " << r.chi_T_round << "\n";
        os << "chi_N = " << fmt(r.chi_N) << "\n";
        os << "chi_N.round = " << r.chi_N_round << "\n";
        os << "sup_k_plus_kperp = " << fmt(r.sup_k_plus_kperp) << "\n";
        os << "excised_fraction = " << fmt(r.excised_fraction) << "\n";
    }
    if (!r.skipped) {
        os << "residual_difference = " << fmt(r.residual_difference) << "\n";
        os << "residual_sum = " << fmt(r.residual_sum) << "\n";
        os << "pointwise_laplacian_residual = " << fmt(r.pointwise_laplacian_residual) << "\n";
        os << "pointwise_balance_residual = " << fmt(r.pointwise_balance_residual) << "\n";
        os << "torsion_product_residual = " << fmt(r.torsion_product_residual) << "\n";
        os << "normal_structure_residual = " << fmt(r.normal_structure_residual) << "\n";
    }
    os << "points = " << r.points.size() << "\n";
    for (size_t i = 0; i < r.points.size(); ++i) {
        const SingularPoint& p = r.points[i];
        const std::string pre = "point." + std::to_string(i) + ".";
        os << pre << "kind = " << to_string(p.kind) << "\n";
        os << pre << "chart = " << p.chart << "\n";
        os << pre << "w = " << fmt(p.w) << "\n";
        os << pre << "node = " << p.node << "\n";
        os << pre << "order = " << p.order << "\n";
        os << pre << "flux = " << fmt(p.flux) << "\n";
    }
    os << "grid.nx = " << s.grid << "\n";
    os << "grid.ny = " << (r.alpha.size() / s.grid) << "\n";
    for (const auto& d : res.dumps) {
        const auto stem = std::filesystem::path(d).stem().string();
        const auto field = stem.substr(stem.rfind('.') + 1);
        os << "dump." << field << " = " << std::filesystem::path(d).filename().string() << "\n";
    }
    os << "exit_code = " << res.exit_code << "\n";
    return os.str();
}

SceneResult run_scene(const Scene& scene) {
    validate(scene);
    SceneResult res;
    std::string stage = "make_subject";
    try {
        Subject subject = make_subject(scene.immersion, scene.grid, scene.params);
        if (!scene.g11.empty()) {
            stage = "metric_from_expressions";
            subject.metric = metric_from_expressions("expression", scene.g11, scene.g12, scene.g22);
        } else if (!scene.metric.empty()) {
            subject.metric = metric_by_name(scene.metric);
        }
        bool flow_ok = true;
        if (scene.run_flow) {
            stage = "flow.minimize";
            res.flow = minimize(subject.map, subject.metric, subject.domain, scene.flow);
            res.flow_ran = true;
            subject.map = res.flow.map;
            // Non-conformal terminal states are not handed on as subjects.
            flow_ok = res.flow.penalty < 1e-6;
        }
        stage = "immersion.full_jet";
        const PullbackJet jet = full_jet(subject, std::numeric_limits<double>::infinity());
        stage = "webster.verify";
        res.report = verify(subject, jet, scene.webster);
        const WebsterReport& r = res.report;

        bool pass = flow_ok && r.stokes_residual < 1e-4;
        if (r.classification == Classification::NotChernMinimal) pass = false;
        if (r.classification == Classification::Generic) pass = pass && r.accepted;
        res.exit_code = pass ? 0 : 1;

        std::filesystem::create_directories(scene.output_dir);
        const std::filesystem::path dir(scene.output_dir);
        if (scene.dump_fields || scene.emit_plots) {
            stage = "dump_fields";
            const int nx = scene.grid, ny = static_cast<int>(r.alpha.size()) / scene.grid;
            auto dump = [&](const std::string& field, const Eigen::VectorXd& v) {
                if (v.size() != r.alpha.size()) return;
                const std::string path = (dir / (scene.name + "." + field + ".hscp")).string();
                write_planes(path, PlaneFile{nx, ny, {v}});
                res.dumps.push_back(path);
            };
            dump("alpha", r.alpha);
            dump("sin_half", (r.alpha / 2).array().sin().matrix());
            dump("k", r.k);
            dump("k_perp", r.k_perp);
            if (r.k.size() == r.k_perp.size()) dump("k_plus_kperp", r.k + r.k_perp);
            dump("laplacian_residual", r.laplacian_residual);
            if (res.flow_ran) {
                const std::string path = (dir / (scene.name + ".checkpoint.hscp")).string();
                save_checkpoint(path, res.flow, subject.domain);
            }
        }
        res.report_path = (dir / (scene.name + ".report")).string();
        {
            std::ofstream os(res.report_path);
            if (!os) throw Error(ErrorKind::IoError, "cannot write " + res.report_path);
            os << format_report(scene, r, res);
        }
        if (scene.emit_plots) {
            stage = "plot";
            res.images = plot_report(res.report_path, scene.output_dir);
        }
    } catch (const Error& e) {
        throw Error(e.kind(), "scene " + scene.name + ": " + stage + ": " + e.detail());
    }
    return res;
}

}  // namespace hermsurf
