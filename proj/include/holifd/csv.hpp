#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace holifd {

/// Formats with enough digits to round-trip a double, locale-free.
std::string format_double(double v);

/// CSV file whose first line is a comment embedding the full run config, so
/// identical configs yield byte-identical outputs.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const nlohmann::json& config);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    void comment(const std::string& text);

  private:
    std::ofstream out_;
};

/// Minimal SVG polyline plot: one series per (label, points) pair.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};
void write_svg_lines(const std::string& path, const std::string& title, const std::vector<SvgSeries>& series,
                     bool log_y = false);

}  // namespace holifd
