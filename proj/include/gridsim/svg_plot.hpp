#ifndef GRIDSIM_SVG_PLOT_HPP
#define GRIDSIM_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace gridsim {

// One labelled waveform; rendered as its own panel in a stacked figure.
struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

/// Static SVG of stacked waveform panels sharing a time axis starting at t0.
/// Output is deterministic: identical inputs yield identical bytes.
std::string waveformSvg(const std::string& title, const std::vector<PlotSeries>& panels,
                        double t0, double dt);

// One bar series over harmonic orders 2..(1+percent.size()), each value in
// percent of the fundamental.
struct SpectrumBars {
    std::string label;
    std::vector<double> percent;
};

/// Static SVG bar chart of harmonic magnitudes, series side by side per order.
std::string spectrumSvg(const std::string& title, const std::vector<SpectrumBars>& series);

} // namespace gridsim

#endif
