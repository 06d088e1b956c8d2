#include "holifd/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace holifd {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const nlohmann::json& config) : out_(path)
{
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    out_ << "# config: " << config.dump() << "\n";
}

void CsvWriter::header(const std::vector<std::string>& names)
{
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << "\n";
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void write_svg_lines(const std::string& path, const std::string& title, const std::vector<SvgSeries>& series,
                     bool log_y)
{
    const int W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (ty(y) - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_svg_lines: cannot open " + path);
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    int ci = 0;
    for (const auto& s : series) {
        const char* color = colors[ci % 6];
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) f << X(x) << "," << Y(y) << " ";
        f << "\"/>\n";
        f << "<text x=\"" << W - mr - 150 << "\" y=\"" << mt + 16 * (ci + 1) << "\" font-size=\"12\" fill=\"" << color
          << "\">" << s.label << "</text>\n";
        ++ci;
    }
    f << "</svg>\n";
}

}  // namespace holifd
