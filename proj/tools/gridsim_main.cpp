#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridsim/engine.hpp"
#include "gridsim/errors.hpp"
#include "gridsim/report.hpp"
#include "gridsim/scenario.hpp"
#include "gridsim/spectrum.hpp"
#include "gridsim/svg_plot.hpp"
#include "gridsim/trace.hpp"

namespace fs = std::filesystem;
using namespace gridsim;

namespace {

void atomicWrite(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    fs::rename(tmp, path);
}

int doRun(const std::string& config_path, const fs::path& out_dir) {
    const ScenarioConfig cfg = loadScenario(config_path);
    const RunResult result = runScenario(cfg);
    const std::string report = formatReport(summarize(cfg, result));
    fs::create_directories(out_dir);
    result.trace.writeCsv((out_dir / (cfg.name + ".csv")).string());
    atomicWrite(out_dir / (cfg.name + ".report.txt"), report);
    std::cout << report;
    return 0;
}

std::string num(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

void printChannelAnalysis(const std::string& name, const std::vector<double>& window,
                          double dt, double f0, int cycles) {
    std::cout << "channel: " << name << "\n";
    HarmonicSpectrum sp;
    try {
        sp = spectrum(window, dt, f0, cycles);
    } catch (const InsufficientDataError& e) {
        std::cout << "  " << e.what() << "\n\n";
        return;
    }
    double fund = 0.0;
    bool have_thd = false;
    double thd_value = 0.0;
    try {
        thd_value = thd(sp);
        have_thd = true;
        fund = sp.magnitude[1];
    } catch (const UndefinedMetricError&) {
    }

    if (have_thd) {
        std::cout << "  fundamental: " << num(fund, 4) << " peak at " << num(f0, 2)
                  << " Hz\n";
        std::cout << "  order  %-of-fundamental\n";
        for (int h = 2; h <= sp.maxOrder(); ++h)
            std::cout << "  " << num(h, 0) << std::string(h < 10 ? 6 : 5, ' ')
                      << num(100.0 * sp.magnitude[static_cast<std::size_t>(h)] / fund, 3)
                      << "\n";
        std::cout << "  thd: " << num(100.0 * thd_value, 2) << " %\n";
    } else {
        std::cout << "  fundamental negligible; harmonic table omitted\n";
        std::cout << "  thd: n/a\n";
    }
    std::cout << "  rms: " << num(rmsFromSpectrum(sp), 4) << "\n\n";
}

int doAnalyze(const std::string& csv_path, double f0, int cycles,
              std::optional<double> from, std::optional<double> to) {
    const SimulationTrace tr = SimulationTrace::readCsv(csv_path);
    const double t_end = static_cast<double>(tr.length()) * tr.dt();
    const double span = static_cast<double>(cycles) / f0;
    const double t_from = from.value_or(std::max(0.0, t_end - span));
    const double t_to = to.value_or(t_end);
    if (!(t_from < t_to))
        throw ConfigError("analyze: require --from < --to");

    std::cout << "trace: " << csv_path << "\n";
    std::cout << "window: [" << num(t_from, 6) << ", " << num(t_to, 6) << ") s, " << cycles
              << " cycles at " << num(f0, 2) << " Hz\n\n";
    for (const auto& name : tr.channelNames())
        printChannelAnalysis(name, tr.window(name, t_from, t_to), tr.dt(), f0, cycles);
    return 0;
}

int doCompare(const std::string& config_path, const fs::path& out_dir) {
    const ScenarioConfig cfg = loadScenario(config_path);
    if (!cfg.sapf_enabled)
        throw ConfigError("[sapf].enabled: compare requires the filter enabled");
    if (!(cfg.sapf_engage_time > 0.0 && cfg.sapf_engage_time <= cfg.t_end))
        throw ConfigError("[sapf].engage_time: compare requires 0 < engage_time <= t_end");

    const RunResult result = runScenario(cfg);
    const ReportSummary summary = summarize(cfg, result);
    const std::string report = formatReport(summary);
    fs::create_directories(out_dir);
    atomicWrite(out_dir / (cfg.name + ".report.txt"), report);

    const SimulationTrace& tr = result.trace;
    const double period = 1.0 / cfg.frequency;
    const double w_from = std::max(0.0, cfg.sapf_engage_time - 5.0 * period);
    const double w_to = std::min(cfg.t_end, cfg.sapf_engage_time + 5.0 * period);

    std::vector<PlotSeries> panels;
    panels.push_back({"source current i_source_a [A]", tr.window("i_source_a", w_from, w_to)});
    {
        auto load = tr.window("i_rect_a", w_from, w_to);
        const auto lin = tr.window("i_linear_a", w_from, w_to);
        if (load.size() == lin.size())
            for (std::size_t j = 0; j < load.size(); ++j) load[j] += lin[j];
        panels.push_back({"load current i_rect_a + i_linear_a [A]", std::move(load)});
    }
    panels.push_back({"injected current i_sapf_a [A]", tr.window("i_sapf_a", w_from, w_to)});
    atomicWrite(out_dir / (cfg.name + ".waveforms.svg"),
                waveformSvg(cfg.name + ": currents around engage", panels, w_from, tr.dt()));

    const int cycles = summary.cycles;
    const double win = static_cast<double>(cycles) / cfg.frequency;
    const double t_end = static_cast<double>(tr.length()) * tr.dt();
    std::vector<SpectrumBars> bars;
    auto harmonicPercents = [&](double a, double b) -> std::optional<std::vector<double>> {
        try {
            const auto sp = spectrum(tr.window("i_source_a", a, b), tr.dt(), cfg.frequency,
                                     cycles, 25);
            const double fund = sp.magnitude[1];
            if (!(fund > 0.0)) return std::nullopt;
            std::vector<double> pct;
            for (int h = 2; h <= sp.maxOrder(); ++h)
                pct.push_back(100.0 * sp.magnitude[static_cast<std::size_t>(h)] / fund);
            return pct;
        } catch (const InsufficientDataError&) {
            return std::nullopt;
        }
    };
    if (summary.has_pre)
        if (auto pct = harmonicPercents(cfg.sapf_engage_time - win, cfg.sapf_engage_time))
            bars.push_back({"pre-engage", std::move(*pct)});
    if (auto pct = harmonicPercents(t_end - win, t_end))
        bars.push_back({"post-engage", std::move(*pct)});
    atomicWrite(out_dir / (cfg.name + ".spectrum.svg"),
                spectrumSvg(cfg.name + ": i_source_a harmonics [% of fundamental]", bars));

    std::cout << report;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PV / micro-hydro microgrid simulator with shunt active power filtering"};
    app.require_subcommand(1);
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory receiving generated files");

    auto* cmd_run = app.add_subcommand("run", "Simulate a scenario; write trace CSV and report");
    std::string run_config;
    cmd_run->add_option("config", run_config, "Scenario file (TOML)")->required();
    cmd_run->fallthrough();

    auto* cmd_analyze =
        app.add_subcommand("analyze", "Harmonic table and metrics of a trace CSV");
    std::string an_csv;
    double an_f0 = 50.0;
    int an_cycles = 10;
    double an_from = 0.0, an_to = 0.0;
    cmd_analyze->add_option("csv", an_csv, "Trace CSV")->required();
    cmd_analyze->add_option("--f0", an_f0, "Fundamental frequency [Hz]")->required();
    cmd_analyze->add_option("--cycles", an_cycles, "Analysis window length in cycles")
        ->required();
    auto* opt_from = cmd_analyze->add_option("--from", an_from, "Window start [s]");
    auto* opt_to = cmd_analyze->add_option("--to", an_to, "Window end [s]");
    cmd_analyze->fallthrough();

    auto* cmd_compare =
        app.add_subcommand("compare", "Run a scenario and report before/after the filter engages");
    std::string cmp_config;
    cmd_compare->add_option("config", cmp_config, "Scenario file (TOML)")->required();
    cmd_compare->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return doRun(run_config, out_dir);
        if (cmd_analyze->parsed())
            return doAnalyze(an_csv, an_f0, an_cycles,
                             opt_from->count() ? std::optional<double>(an_from) : std::nullopt,
                             opt_to->count() ? std::optional<double>(an_to) : std::nullopt);
        if (cmd_compare->parsed()) return doCompare(cmp_config, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientDataError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
