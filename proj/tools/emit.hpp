#pragma once

#include <string>
#include <vector>

namespace abfcli {

std::string fmt(double v);

/// CSV with a header row and deterministic row order; byte-identical on
/// reruns with the same inputs.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct Series {
    std::vector<double> x, y;
    std::string color = "#1f6fb2";
    bool scatter = false;
};

/// Minimal hand-rolled SVG line/scatter plot; no plotting dependency.
void write_svg(const std::string& path, const std::vector<Series>& series,
               const std::string& x_label, const std::string& y_label);

}  // namespace abfcli
