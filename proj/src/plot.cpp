#include "hermsurf/plot.hpp"

#include "hermsurf/errors.hpp"
#include "hermsurf/flow.hpp"
#include "hermsurf/scene.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hermsurf {

namespace {

// Blue (lo) through white to red (hi).
std::array<unsigned char, 3> colour(double t) {
    t = std::clamp(t, 0.0, 1.0);
    auto byte = [](double x) { return static_cast<unsigned char>(std::lround(255 * std::clamp(x, 0.0, 1.0))); };
    if (t < 0.5) {
        const double u = 2 * t;
        return {byte(0.15 + 0.85 * u), byte(0.3 + 0.7 * u), byte(1.0)};
    }
    const double u = 2 * (t - 0.5);
    return {byte(1.0), byte(1.0 - 0.8 * u), byte(1.0 - 0.85 * u)};
}

}  // namespace

void write_heatmap(const std::string& path, const Eigen::VectorXd& field, int width, int height, double lo,
                   double hi, const std::vector<std::pair<int, int>>& marks, int scale) {
    if (field.size() != static_cast<Eigen::Index>(width) * height)
        throw Error(ErrorKind::IoError, "plot: field size does not match the image");
    if (!(hi > lo)) {
        const double mid = std::isfinite(lo) ? lo : 0.0;
        lo = mid - 1.0;
        hi = mid + 1.0;
    }
    const int w = width * scale, h = height * scale;
    std::vector<unsigned char> px(3 * static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = field((y / scale) * width + x / scale);
            const auto c = std::isfinite(v) ? colour((v - lo) / (hi - lo)) : std::array<unsigned char, 3>{128, 128, 128};
            std::copy(c.begin(), c.end(), px.begin() + 3 * (static_cast<size_t>(y) * w + x));
        }
    for (const auto& [mx, my] : marks) {
        const int cx = mx * scale + scale / 2, cy = my * scale + scale / 2;
        for (int d = -3 * scale; d <= 3 * scale; ++d)
            for (const auto& [x, y] : {std::pair{cx + d, cy}, std::pair{cx, cy + d}}) {
                if (x < 0 || y < 0 || x >= w || y >= h) continue;
                std::fill_n(px.begin() + 3 * (static_cast<size_t>(y) * w + x), 3, 0);
            }
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::IoError, "plot: cannot write " + path);
    os << "P6\n" << w << " " << h << "\n255\n";
    os.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

std::vector<std::string> plot_report(const std::string& report_path, const std::string& out_dir) {
    std::ifstream is(report_path);
    if (!is) throw Error(ErrorKind::MissingDump, "plot: cannot open report " + report_path);
    std::ostringstream ss;
    ss << is.rdbuf();
    const auto kv = parse_key_values(ss.str());
    const std::filesystem::path base = std::filesystem::path(report_path).parent_path();

    std::vector<int> nodes;
    for (const auto& [k, v] : kv)
        if (k.rfind("point.", 0) == 0 && k.size() > 5 && k.substr(k.size() - 5) == ".node") nodes.push_back(std::stoi(v));

    std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
    std::vector<std::string> images;
    bool any = false;
    for (const auto& [k, v] : kv) {
        if (k.rfind("dump.", 0) != 0) continue;
        any = true;
        const std::filesystem::path dump = base / v;
        if (!std::filesystem::exists(dump)) throw Error(ErrorKind::MissingDump, "plot: missing dump " + dump.string());
        const PlaneFile f = read_planes(dump.string());
        if (f.planes.empty()) throw Error(ErrorKind::MissingDump, "plot: empty dump " + dump.string());
        const Eigen::VectorXd& field = f.planes[0];
        double lo = 1e300, hi = -1e300;
        for (Eigen::Index i = 0; i < field.size(); ++i)
            if (std::isfinite(field(i))) {
                lo = std::min(lo, field(i));
                hi = std::max(hi, field(i));
            }
        // Ranges include zero and are at least ±1e-3 wide, so constant and
        // near-zero fields render as flat colour instead of amplified noise.
        lo = std::min(lo, 0.0);
        hi = std::max(hi, 0.0);
        if (lo < 0 && hi > 0) {
            const double m = std::max({-lo, hi, 1e-3});
            lo = -m;
            hi = m;
        } else if (hi - lo < 1e-3) {
            (hi > 0 ? hi : lo) = hi > 0 ? std::max(hi, 1e-3) : std::min(lo, -1e-3);
            if (hi == 0 && lo == 0) hi = 1e-3;
        }
        std::vector<std::pair<int, int>> marks;
        for (int node : nodes) marks.emplace_back(node % f.nx, node / f.nx);
        const std::string out = (std::filesystem::path(out_dir) / (dump.stem().string() + ".ppm")).string();
        write_heatmap(out, field, f.nx, f.ny, lo, hi, marks);
        images.push_back(out);
    }
    if (!any) throw Error(ErrorKind::MissingDump, "plot: report lists no field dumps (run with --dump-fields)");
    return images;
}

}  // namespace hermsurf
