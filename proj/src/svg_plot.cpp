#include "gridsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gridsim {

namespace {

constexpr int kWidth = 900;
constexpr int kPanelHeight = 170;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kPanelGap = 30;

const char* seriesColor(std::size_t idx) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    return colors[idx % 4];
}

std::string num(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string svgHeader(int width, int height, const std::string& title) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(width / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"16\">" +
           title + "</text>\n";
    return out;
}

} // namespace

std::string waveformSvg(const std::string& title, const std::vector<PlotSeries>& panels,
                        double t0, double dt) {
    const int n_panels = static_cast<int>(panels.size());
    const int height = kMarginTop + n_panels * (kPanelHeight + kPanelGap);
    const int plot_w = kWidth - kMarginLeft - kMarginRight;
    std::string out = svgHeader(kWidth, height, title);

    for (int p = 0; p < n_panels; ++p) {
        const auto& series = panels[static_cast<std::size_t>(p)];
        const int top = kMarginTop + p * (kPanelHeight + kPanelGap);
        const int bottom = top + kPanelHeight;

        double lo = 0.0, hi = 1.0;
        if (!series.y.empty()) {
            const auto [mn, mx] = std::minmax_element(series.y.begin(), series.y.end());
            lo = *mn;
            hi = *mx;
        }
        if (hi - lo < 1e-12) {
            hi += 1.0;
            lo -= 1.0;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;

        out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(top) +
               "\" width=\"" + std::to_string(plot_w) + "\" height=\"" +
               std::to_string(kPanelHeight) +
               "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
               std::to_string(top - 6) + "\" font-family=\"monospace\" font-size=\"12\">" +
               series.label + "</text>\n";
        // y-axis extremes
        out += "<text x=\"" + std::to_string(kMarginLeft - 6) + "\" y=\"" +
               std::to_string(top + 12) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
               num(hi, 1) + "</text>\n";
        out += "<text x=\"" + std::to_string(kMarginLeft - 6) + "\" y=\"" +
               std::to_string(bottom) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
               num(lo, 1) + "</text>\n";

        if (series.y.size() >= 2) {
            // thin dense traces so the polyline stays a sane size
            const std::size_t n = series.y.size();
            const std::size_t stride = std::max<std::size_t>(1, n / 2000);
            out += "<polyline fill=\"none\" stroke=\"";
            out += seriesColor(static_cast<std::size_t>(p));
            out += "\" stroke-width=\"1\" points=\"";
            for (std::size_t j = 0; j < n; j += stride) {
                const double x = kMarginLeft + plot_w * static_cast<double>(j) /
                                                   static_cast<double>(n - 1);
                const double yv = (series.y[j] - lo) / (hi - lo);
                const double y = bottom - kPanelHeight * yv;
                out += num(x, 2) + "," + num(y, 2) + " ";
            }
            out += "\"/>\n";
        }

        // time extent under the lowest panel
        if (p == n_panels - 1) {
            const double t1 =
                t0 + dt * static_cast<double>(series.y.empty() ? 0 : series.y.size() - 1);
            out += "<text x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
                   std::to_string(bottom + 16) + "\" font-family=\"monospace\" font-size=\"11\">" +
                   num(t0, 3) + " s</text>\n";
            out += "<text x=\"" + std::to_string(kMarginLeft + plot_w) + "\" y=\"" +
                   std::to_string(bottom + 16) +
                   "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
                   num(t1, 3) + " s</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string spectrumSvg(const std::string& title, const std::vector<SpectrumBars>& series) {
    const int height = kMarginTop + kPanelHeight + 70;
    const int plot_w = kWidth - kMarginLeft - kMarginRight;
    const int top = kMarginTop + 20;
    const int bottom = top + kPanelHeight;
    std::string out = svgHeader(kWidth, height, title);

    std::size_t orders = 0;
    double peak = 0.0;
    for (const auto& sr : series) {
        orders = std::max(orders, sr.percent.size());
        for (double v : sr.percent) peak = std::max(peak, v);
    }
    peak = std::max(peak, 1.0);

    out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(top) +
           "\" width=\"" + std::to_string(plot_w) + "\" height=\"" +
           std::to_string(kPanelHeight) +
           "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + std::to_string(kMarginLeft - 6) + "\" y=\"" +
           std::to_string(top + 12) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + num(peak, 1) +
           "%</text>\n";
    out += "<text x=\"" + std::to_string(kMarginLeft - 6) + "\" y=\"" + std::to_string(bottom) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">0%</text>\n";

    if (orders > 0) {
        const double slot = static_cast<double>(plot_w) / static_cast<double>(orders);
        const double bar =
            std::max(1.0, slot / (static_cast<double>(series.size()) + 1.0));
        for (std::size_t si = 0; si < series.size(); ++si) {
            const auto& sr = series[si];
            for (std::size_t k = 0; k < sr.percent.size(); ++k) {
                const double h = kPanelHeight * std::min(1.0, sr.percent[k] / peak);
                const double x = kMarginLeft + slot * static_cast<double>(k) +
                                 bar * (static_cast<double>(si) + 0.5);
                out += "<rect x=\"" + num(x, 2) + "\" y=\"" + num(bottom - h, 2) +
                       "\" width=\"" + num(bar, 2) + "\" height=\"" + num(h, 2) +
                       "\" fill=\"" + seriesColor(si) + "\"/>\n";
            }
            // legend swatch + label
            const int ly = bottom + 34 + 16 * static_cast<int>(si);
            out += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
                   std::to_string(ly - 10) + "\" width=\"10\" height=\"10\" fill=\"" +
                   seriesColor(si) + "\"/>\n";
            out += "<text x=\"" + std::to_string(kMarginLeft + 16) + "\" y=\"" +
                   std::to_string(ly) + "\" font-family=\"monospace\" font-size=\"12\">" +
                   sr.label + "</text>\n";
        }
        // order ticks every 5
        for (std::size_t k = 0; k < orders; ++k) {
            const std::size_t order = k + 2;
            if (order % 5 != 0) continue;
            const double x = kMarginLeft + slot * (static_cast<double>(k) + 0.5);
            out += "<text x=\"" + num(x, 2) + "\" y=\"" + std::to_string(bottom + 16) +
                   "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
                   std::to_string(order) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace gridsim
