#include "xlcite/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "xlcite/corpus.hpp"

namespace xlcite {

namespace {

constexpr int kCellW = 44;
constexpr int kCellH = 24;
constexpr int kLeftMargin = 72;
constexpr int kTopMargin = 28;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

void emit_heatmap_svg(const GeoMatrix& matrix, std::ostream& out, HeatmapMode mode) {
    if (matrix.cited_languages.empty() || matrix.origin_groups.empty())
        throw ValidationError("emit_heatmap_svg: empty matrix");

    const std::size_t rows = matrix.cited_languages.size();
    const std::size_t cols = matrix.origin_groups.size();
    const bool annotate = cols <= 20;
    const int width = kLeftMargin + static_cast<int>(cols) * kCellW + 8;
    const int height = kTopMargin + static_cast<int>(rows) * kCellH + 8;

    const auto rel = matrix.row_normalized();
    std::uint64_t max_cell = 0;
    for (const auto& row : matrix.cells)
        for (auto v : row) max_cell = std::max(max_cell, v);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"10\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";

    for (std::size_t c = 0; c < cols; ++c) {
        const int x = kLeftMargin + static_cast<int>(c) * kCellW + kCellW / 2;
        out << "<text x=\"" << x << "\" y=\"" << kTopMargin - 8
            << "\" text-anchor=\"middle\">" << xml_escape(matrix.origin_groups[c])
            << "</text>\n";
    }
    for (std::size_t r = 0; r < rows; ++r) {
        const int y = kTopMargin + static_cast<int>(r) * kCellH + kCellH / 2 + 4;
        out << "<text x=\"" << kLeftMargin - 6 << "\" y=\"" << y
            << "\" text-anchor=\"end\">" << xml_escape(matrix.cited_languages[r])
            << "</text>\n";
    }

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double intensity = 0;
            if (mode == HeatmapMode::relative) {
                intensity = rel[r][c];
            } else if (max_cell > 0) {
                intensity = static_cast<double>(matrix.cells[r][c]) /
                            static_cast<double>(max_cell);
            }
            const int gray = 255 - static_cast<int>(intensity * 255.0 + 0.5);
            const int x = kLeftMargin + static_cast<int>(c) * kCellW;
            const int y = kTopMargin + static_cast<int>(r) * kCellH;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellW
                << "\" height=\"" << kCellH << "\" fill=\"rgb(" << gray << ',' << gray
                << ',' << gray << ")\" stroke=\"gray\"/>\n";
            if (annotate) {
                const char* color = gray < 128 ? "white" : "black";
                const std::string label =
                    mode == HeatmapMode::relative
                        ? fmt("%.2f", rel[r][c])
                        : std::to_string(matrix.cells[r][c]);
                out << "<text x=\"" << x + kCellW / 2 << "\" y=\"" << y + kCellH / 2 + 4
                    << "\" text-anchor=\"middle\" fill=\"" << color << "\">" << label
                    << "</text>\n";
            }
        }
    }
    out << "</svg>\n";
}

void emit_heatmap_svg(const GeoMatrix& matrix, const std::filesystem::path& path,
                      HeatmapMode mode) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    emit_heatmap_svg(matrix, out, mode);
}

}  // namespace xlcite
