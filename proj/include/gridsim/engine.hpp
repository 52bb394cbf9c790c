#ifndef GRIDSIM_ENGINE_HPP
#define GRIDSIM_ENGINE_HPP

#include <cstdint>

#include "gridsim/scenario.hpp"
#include "gridsim/trace.hpp"

namespace gridsim {

struct RunStats {
    std::uint64_t steps = 0;
    std::uint64_t rectifier_fixed_point_misses = 0;
    std::uint64_t elc_switchings = 0;  // dispatch calls that changed the mask
    double final_speed_pu = 1.0;
    double final_v_dc_sapf = 0.0;
    double final_p_pv = 0.0;
    double final_v_pv = 0.0;
};

struct RunResult {
    SimulationTrace trace;
    RunStats stats;
};

/// Execute one scenario with the fixed per-step order:
/// bus voltage, load draws, injections, PCC balance, measurements,
/// controllers, recording. Identical configs yield bit-identical traces.
RunResult runScenario(const ScenarioConfig& cfg);

} // namespace gridsim

#endif
