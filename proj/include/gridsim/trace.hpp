#ifndef GRIDSIM_TRACE_HPP
#define GRIDSIM_TRACE_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace gridsim {

// Time-indexed named channels recorded during a run. All channels share the
// same length; sample n lives at time n*dt.
class SimulationTrace {
public:
    SimulationTrace() = default;
    explicit SimulationTrace(double dt) : m_dt(dt) {}

    double dt() const { return m_dt; }
    void setDt(double dt) { m_dt = dt; }

    std::vector<double>& channel(const std::string& name);
    const std::vector<double>& channel(const std::string& name) const;
    bool hasChannel(const std::string& name) const { return m_channels.count(name) != 0; }
    std::vector<std::string> channelNames() const;
    std::size_t length() const;

    /// Sample index of time t (rounded to the step grid).
    std::size_t indexAt(double t) const;

    /// Copy of channel samples on [from, to) given in seconds.
    std::vector<double> window(const std::string& name, double t_from, double t_to) const;

    /// Trace CSV: header "t_s,<name>,...", 9 significant digits, LF endings.
    /// Channels appear in lexicographic order. Written atomically
    /// (temp file + rename).
    void writeCsv(const std::string& path) const;
    std::string toCsv() const;
    static SimulationTrace readCsv(const std::string& path);

private:
    double m_dt = 0.0;
    std::map<std::string, std::vector<double>> m_channels;
};

} // namespace gridsim

#endif
