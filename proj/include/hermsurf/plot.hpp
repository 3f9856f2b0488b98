#pragma once

#include "hermsurf/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hermsurf {

/// Writes a binary PPM heatmap of a width × height field (row-major, row 0
/// at the top) using a fixed blue–white–red map over [lo, hi]. Marked pixels
/// get a black cross. Each grid cell becomes `scale` × `scale` pixels.
void write_heatmap(const std::string& path, const Eigen::VectorXd& field, int width, int height, double lo,
                   double hi, const std::vector<std::pair<int, int>>& marks = {}, int scale = 2);

/// Renders every `dump.<field>` listed in a report; singular points listed
/// as `point.<i>.node` are marked. Colour ranges always include zero and
/// span at least 1e-3. Returns the image paths. Throws
/// MissingDump if a listed dump is absent.
std::vector<std::string> plot_report(const std::string& report_path, const std::string& out_dir);

}  // namespace hermsurf
