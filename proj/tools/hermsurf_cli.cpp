#include "hermsurf/errors.hpp"
#include "hermsurf/plot.hpp"
#include "hermsurf/scene.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace hermsurf;

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for Chern-minimal surfaces in Hermitian surfaces"};
    app.require_subcommand(1);

    std::string scene_path, report_path, out_dir;
    std::optional<int> grid;
    std::optional<double> tol_chern;
    std::optional<unsigned> seed;
    bool emit_plots = false, dump_fields = false;

    auto* run = app.add_subcommand("run", "Run a scene file and write its report");
    run->add_option("scene", scene_path, "Scene file")->required()->check(CLI::ExistingFile);
    run->add_option("--grid", grid, "Override the grid size (power of two, 32..512)");
    run->add_option("--tol-chern", tol_chern, "Chern mean curvature tolerance");
    run->add_option("--seed", seed, "Seed for randomized subjects");
    run->add_flag("--emit-plots", emit_plots, "Write heatmaps of the dumped fields");
    run->add_flag("--dump-fields", dump_fields, "Write binary field dumps next to the report");
    run->add_option("--out", out_dir, "Output directory (overrides output.dir)");

    auto* plot = app.add_subcommand("plot", "Render the field dumps listed in a report");
    plot->add_option("report", report_path, "Report file")->required();
    plot->add_option("--out", out_dir, "Image directory (default: next to the report)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            Scene scene = load_scene(scene_path);
            if (grid) scene.grid = *grid;
            if (tol_chern) scene.webster.tol_chern = *tol_chern;
            if (seed) scene.params.seed = *seed;
            if (emit_plots) scene.emit_plots = true;
            if (dump_fields) scene.dump_fields = true;
            if (!out_dir.empty()) scene.output_dir = out_dir;
            const SceneResult res = run_scene(scene);
            const WebsterReport& r = res.report;
            std::cout << scene.name << ": " << to_string(r.classification) << ", "
                      << (r.skipped ? "verification SKIPPED" : (r.accepted ? "ACCEPTED" : "REJECTED")) << "\n";
            if (r.classification != Classification::NotChernMinimal)
                std::cout << "  P = " << r.P << "  Q = " << r.Q << "  chi_T = " << r.chi_T << "  chi_N = " << r.chi_N
                          << "  c1 = " << r.c1 << "\n";
            std::cout << "  report: " << res.report_path << "\n";
            for (const auto& img : res.images) std::cout << "  image: " << img << "\n";
            return res.exit_code;
        }
        const std::string dir =
            out_dir.empty() ? std::filesystem::path(report_path).parent_path().string() : out_dir;
        for (const auto& img : plot_report(report_path, dir.empty() ? "." : dir)) std::cout << img << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
