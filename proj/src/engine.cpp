#include "gridsim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "gridsim/errors.hpp"
#include "gridsim/hydro.hpp"
#include "gridsim/linear_load.hpp"
#include "gridsim/pv.hpp"
#include "gridsim/rectifier.hpp"
#include "gridsim/sapf.hpp"
#include "gridsim/transforms.hpp"

namespace gridsim {

namespace {

// Running mean over a fixed number of steps, used to strip switching ripple
// from the electrical power fed to the swing equation.
class MovingAverage {
public:
    explicit MovingAverage(std::size_t len) : m_buf(len, 0.0) {}
    double push(double v) {
        m_sum += v - m_buf[m_next];
        m_buf[m_next] = v;
        m_next = (m_next + 1) % m_buf.size();
        return m_sum / static_cast<double>(m_buf.size());
    }

private:
    std::vector<double> m_buf;
    std::size_t m_next = 0;
    double m_sum = 0.0;
};

// Channel pointers resolved once so the hot loop never touches strings.
// Unselected channels resolve to nullptr and are skipped.
class Recorder {
public:
    Recorder(SimulationTrace& trace, const std::vector<std::string>& names,
             std::size_t reserve) {
        for (const auto& name : names) {
            auto& ch = trace.channel(name);
            ch.reserve(reserve);
            m_slots[name] = &ch;
        }
    }

    std::vector<double>* scalar(const std::string& name) const {
        auto it = m_slots.find(name);
        return it == m_slots.end() ? nullptr : it->second;
    }

    std::array<std::vector<double>*, 3> phases(const std::string& base) const {
        return {scalar(base + "_a"), scalar(base + "_b"), scalar(base + "_c")};
    }

    static void push(std::vector<double>* ch, double v) {
        if (ch) ch->push_back(v);
    }

    static void push(const std::array<std::vector<double>*, 3>& chs, const ThreePhase& v) {
        for (int k = 0; k < 3; ++k)
            if (chs[k]) chs[k]->push_back(v(k));
    }

private:
    std::map<std::string, std::vector<double>*> m_slots;
};

} // namespace

RunResult runScenario(const ScenarioConfig& cfg) {
    validateScenario(cfg);

    const double dt = cfg.dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / dt));
    const double peak_ll = std::sqrt(2.0) * cfg.bus_voltage_ll_rms;

    BusModel bus;
    bus.kind = cfg.bus_kind;
    bus.v_ll_rms = cfg.bus_voltage_ll_rms;
    bus.frequency = cfg.frequency;
    bus.series_r = cfg.bus_series_r;
    bus.series_l = cfg.bus_series_l;

    RectifierLoad rect;
    rect.dc_resistance = cfg.rect_dc_resistance;
    rect.dc_capacitance = cfg.rect_dc_capacitance;
    rect.ac_inductance = cfg.rect_ac_inductance;
    rect.ac_resistance = cfg.rect_ac_resistance;
    rect.diode_r_on = cfg.rect_diode_r_on;
    rect.diode_r_off = cfg.rect_diode_r_off;
    rect.v_dc = peak_ll;  // near-steady start instead of a cold inrush

    LinearLoad linear;
    if (cfg.linear_power > 0.0)
        sizeLinearLoad(linear, cfg.linear_power, cfg.linear_power_factor,
                       cfg.bus_voltage_ll_rms, cfg.frequency);
    else {
        linear.resistance = cfg.linear_resistance;
        linear.inductance = cfg.linear_inductance;
    }

    std::optional<PvArray> pv;
    MpptState mppt;
    double v_pv = 0.0, i_pv_dc = 0.0, p_pv = 0.0;
    if (cfg.pv_enabled) {
        pv = calibratePv(cfg.pv_p_mpp, cfg.pv_v_mpp, cfg.pv_v_oc, cfg.pv_i_sc);
        pv->irradiance = cfg.pv_irradiance;
        mppt.step = cfg.mppt_step;
        mppt.period = cfg.mppt_period;
        mppt.v_ref = cfg.mppt_v_initial;
        v_pv = mppt.v_ref;
        i_pv_dc = pvCurrent(*pv, v_pv);
        p_pv = v_pv * i_pv_dc;
        mppt.prev_power = p_pv;
        mppt.prev_voltage = v_pv;
    }

    HydroGenerator gen;
    gen.rated_power = cfg.mhp_rated_power;
    gen.mech_power = cfg.mhp_mech_power;
    gen.inertia_h = cfg.mhp_inertia_h;
    ElcState elc;
    elc.n_steps = cfg.elc_n_steps;
    elc.step_power = cfg.elc_step_power;
    elc.deadband = cfg.elc_deadband;
    elc.gain = cfg.elc_gain;

    SapfController ctrl(cfg.sapf_hp_cutoff, cfg.sapf_dc_kp, cfg.sapf_dc_ki, cfg.sapf_p_limit,
                        cfg.sapf_v_dc_ref, cfg.sapf_band, dt);
    SapfInverter inv;
    inv.c_dc = cfg.sapf_c_dc;
    inv.l_filter = cfg.sapf_l_filter;
    inv.r_filter = cfg.sapf_r_filter;
    inv.v_dc = peak_ll;  // pre-charged through the antiparallel-diode path

    const auto mppt_every = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(cfg.mppt_period / dt)));
    const auto elc_every = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(cfg.elc_period / dt)));
    // two fundamental cycles of averaging for the swing-equation power
    const auto ma_len = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(2.0 / (cfg.frequency * dt))));
    MovingAverage p_elec_ma(ma_len);

    RunResult result;
    result.trace.setDt(dt);
    const Recorder rec(result.trace, scenarioChannels(cfg), n_steps);
    const auto ch_v_bus = rec.phases("v_bus");
    const auto ch_i_source = rec.phases("i_source");
    const auto ch_i_rect = rec.phases("i_rect");
    const auto ch_i_linear = rec.phases("i_linear");
    const auto ch_i_pv = rec.phases("i_pv");
    const auto ch_i_sapf = rec.phases("i_sapf");
    const auto ch_i_ref = rec.phases("i_ref");
    auto* const ch_v_dc_sapf = rec.scalar("v_dc_sapf");
    auto* const ch_v_dc_rect = rec.scalar("v_dc_rect");
    auto* const ch_speed = rec.scalar("speed_pu");
    auto* const ch_elc_steps = rec.scalar("elc_steps");
    auto* const ch_p_dump = rec.scalar("p_dump");
    auto* const ch_p_pv = rec.scalar("p_pv");
    auto* const ch_v_pv = rec.scalar("v_pv");
    auto* const ch_p_source = rec.scalar("p_source");

    ThreePhase i_ref = ThreePhase::Zero();
    ThreePhase i_source_prev = ThreePhase::Zero();
    std::array<int, 3> gates{0, 0, 0};
    const double eps_v2 = 1.0;

    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        try {
            const ThreePhase v_bus = busVoltage(bus, t, i_source_prev, dt);

            const ThreePhase i_rect =
                cfg.rectifier_enabled ? rectifierStep(rect, v_bus, dt) : ThreePhase::Zero();
            const ThreePhase i_linear =
                cfg.linear_enabled ? linearLoadStep(linear, v_bus, dt) : ThreePhase::Zero();

            ThreePhase i_pv = ThreePhase::Zero();
            if (cfg.pv_enabled) {
                const double v2 = v_bus.squaredNorm();
                if (v2 > eps_v2) i_pv = v_bus * (p_pv / v2);
            }

            const bool engaged = cfg.sapf_enabled && t >= cfg.sapf_engage_time;
            ThreePhase i_sapf = ThreePhase::Zero();
            if (engaged) i_sapf = inverterStep(inv, gates, v_bus, dt);

            const ThreePhase i_source = i_rect + i_linear - i_pv - i_sapf;
            i_source_prev = i_source;

            const double p_source = v_bus.dot(i_source);
            const double p_elec = p_elec_ma.push(p_source);

            // Flow and command channels are recorded as used this step, before
            // the controllers overwrite them for the next one.
            Recorder::push(ch_v_bus, v_bus);
            Recorder::push(ch_i_source, i_source);
            Recorder::push(ch_i_rect, i_rect);
            Recorder::push(ch_i_linear, i_linear);
            Recorder::push(ch_i_pv, i_pv);
            Recorder::push(ch_i_sapf, i_sapf);
            Recorder::push(ch_i_ref, engaged ? i_ref : ThreePhase::Zero());
            Recorder::push(ch_p_pv, p_pv);
            Recorder::push(ch_v_pv, v_pv);
            Recorder::push(ch_p_source, p_source);

            // -- controllers; their outputs act on the next step --
            if (engaged) {
                const AlphaBeta v_ab = clarke(v_bus).head<2>();
                if (v_ab.squaredNorm() > eps_v2)
                    i_ref = ctrl.reference(v_bus, i_rect + i_linear, inv.v_dc);
                // else hold the previous reference through the voltage dip
                for (int k = 0; k < 3; ++k)
                    gates[k] = hysteresisGate(inv.i_inj(k), i_ref(k), ctrl.band(), gates[k]);
            }

            if (cfg.pv_enabled && (n + 1) % mppt_every == 0) {
                mpptStep(mppt, v_pv, i_pv_dc, pv->v_oc);
                v_pv = mppt.v_ref;
                i_pv_dc = pvCurrent(*pv, v_pv);
                p_pv = v_pv * i_pv_dc;
            }

            double p_dump = 0.0;
            if (cfg.mhp_enabled) {
                if ((n + 1) % elc_every == 0) {
                    const auto mask_before = elc.active_mask;
                    elcDispatch(elc, gen.speed_pu);
                    if (elc.active_mask != mask_before) ++result.stats.elc_switchings;
                }
                p_dump = elcDumpPower(elc);
                generatorStep(gen, p_elec, p_dump, dt);
                if (gen.speed_pu <= 0.0)
                    throw SimulationError("rotor speed collapsed to zero", n);
            }

            // State channels carry the post-step values.
            Recorder::push(ch_v_dc_sapf, inv.v_dc);
            Recorder::push(ch_v_dc_rect, rect.v_dc);
            Recorder::push(ch_speed, gen.speed_pu);
            Recorder::push(ch_elc_steps, static_cast<double>(elcActiveSteps(elc)));
            Recorder::push(ch_p_dump, p_dump);
        } catch (const ConfigError&) {
            throw;
        } catch (const SimulationError& e) {
            if (e.step() == SimulationError::kNoStep)
                throw SimulationError(e.what(), n);
            throw;
        } catch (const std::exception& e) {
            throw SimulationError(e.what(), n);
        }
    }

    result.stats.steps = n_steps;
    result.stats.rectifier_fixed_point_misses = rect.fixed_point_misses;
    result.stats.final_speed_pu = gen.speed_pu;
    result.stats.final_v_dc_sapf = inv.v_dc;
    result.stats.final_p_pv = p_pv;
    result.stats.final_v_pv = v_pv;
    return result;
}

} // namespace gridsim
