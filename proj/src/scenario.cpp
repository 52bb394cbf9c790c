#include "gridsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gridsim/errors.hpp"
#include "gridsim/linear_load.hpp"
#include "gridsim/toml_lite.hpp"

namespace gridsim {

namespace {

using SectionMap = std::map<std::string, toml::Value>;

class SectionReader {
public:
    SectionReader(const std::string& section, const SectionMap* map)
        : m_section(section), m_map(map) {}

    ~SectionReader() = default;

    bool has(const std::string& key) const { return m_map && m_map->count(key); }

    void number(const std::string& key, double& out) {
        take(key, [&](const toml::Value& v) {
            if (const double* d = std::get_if<double>(&v)) out = *d;
            else fail(key, "expected a number");
        });
    }

    void integer(const std::string& key, int& out) {
        take(key, [&](const toml::Value& v) {
            const double* d = std::get_if<double>(&v);
            if (!d || *d != std::floor(*d)) fail(key, "expected an integer");
            out = static_cast<int>(*d);
        });
    }

    void boolean(const std::string& key, bool& out) {
        take(key, [&](const toml::Value& v) {
            if (const bool* b = std::get_if<bool>(&v)) out = *b;
            else fail(key, "expected true or false");
        });
    }

    void text(const std::string& key, std::string& out) {
        take(key, [&](const toml::Value& v) {
            if (const std::string* s = std::get_if<std::string>(&v)) out = *s;
            else fail(key, "expected a quoted string");
        });
    }

    void stringList(const std::string& key, std::vector<std::string>& out) {
        take(key, [&](const toml::Value& v) {
            if (const auto* a = std::get_if<std::vector<std::string>>(&v)) out = *a;
            else fail(key, "expected an array of strings");
        });
    }

    /// After all known keys were taken, anything left is unknown.
    void finish() const {
        if (!m_map) return;
        for (const auto& [key, _] : *m_map)
            if (!m_taken.count(key)) fail(key, "unknown key");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("[" + m_section + "]." + key + ": " + what);
    }

private:
    void take(const std::string& key, const std::function<void(const toml::Value&)>& apply) {
        if (!m_map) return;
        auto it = m_map->find(key);
        if (it == m_map->end()) return;
        m_taken.insert(key);
        apply(it->second);
    }

    std::string m_section;
    const SectionMap* m_map;
    mutable std::set<std::string> m_taken;
};

} // namespace

const std::vector<std::string>& allChannelNames() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const char* base : {"v_bus", "i_source", "i_rect", "i_linear", "i_pv", "i_sapf", "i_ref"})
            for (const char* ph : {"_a", "_b", "_c"})
                v.push_back(std::string(base) + ph);
        for (const char* s : {"v_dc_sapf", "v_dc_rect", "speed_pu", "elc_steps", "p_dump",
                              "p_pv", "v_pv", "p_source"})
            v.push_back(s);
        return v;
    }();
    return names;
}

std::vector<std::string> scenarioChannels(const ScenarioConfig& cfg) {
    if (cfg.record_channels.empty()) return allChannelNames();
    return cfg.record_channels;
}

ScenarioConfig parseScenario(const std::string& text) {
    const toml::Document doc = toml::parse(text);

    static const std::set<std::string> known_sections = {
        "", "bus", "pv", "mhp", "elc", "rectifier", "linear", "sapf", "sim"};
    for (const auto& [name, section] : doc.sections) {
        if (!known_sections.count(name))
            throw ConfigError("[" + name + "]: unknown section");
        if (name.empty() && !section.empty())
            throw ConfigError("top-level key '" + section.begin()->first +
                              "': keys must live in a section");
    }

    ScenarioConfig cfg;
    auto section = [&](const char* name) -> const SectionMap* {
        auto it = doc.sections.find(name);
        return it == doc.sections.end() ? nullptr : &it->second;
    };

    {
        SectionReader r("bus", section("bus"));
        std::string kind = cfg.bus_kind == BusKind::Stiff ? "stiff" : "thevenin";
        r.text("kind", kind);
        if (kind == "stiff") cfg.bus_kind = BusKind::Stiff;
        else if (kind == "thevenin") cfg.bus_kind = BusKind::Thevenin;
        else r.fail("kind", "must be \"stiff\" or \"thevenin\"");
        r.number("voltage_ll_rms", cfg.bus_voltage_ll_rms);
        r.number("frequency", cfg.frequency);
        r.number("series_r", cfg.bus_series_r);
        r.number("series_l", cfg.bus_series_l);
        r.finish();
    }
    {
        SectionReader r("pv", section("pv"));
        r.boolean("enabled", cfg.pv_enabled);
        r.number("p_mpp", cfg.pv_p_mpp);
        r.number("v_mpp", cfg.pv_v_mpp);
        r.number("v_oc", cfg.pv_v_oc);
        r.number("i_sc", cfg.pv_i_sc);
        r.number("irradiance", cfg.pv_irradiance);
        r.number("mppt_step", cfg.mppt_step);
        r.number("mppt_period", cfg.mppt_period);
        r.number("mppt_v_initial", cfg.mppt_v_initial);
        r.finish();
    }
    {
        SectionReader r("mhp", section("mhp"));
        r.boolean("enabled", cfg.mhp_enabled);
        r.number("rated_power", cfg.mhp_rated_power);
        r.number("mech_power", cfg.mhp_mech_power);
        r.number("inertia_h", cfg.mhp_inertia_h);
        r.finish();
    }
    {
        SectionReader r("elc", section("elc"));
        r.integer("n_steps", cfg.elc_n_steps);
        r.number("step_power", cfg.elc_step_power);
        r.number("deadband", cfg.elc_deadband);
        r.number("gain", cfg.elc_gain);
        r.number("period", cfg.elc_period);
        r.finish();
    }
    {
        SectionReader r("rectifier", section("rectifier"));
        r.boolean("enabled", cfg.rectifier_enabled);
        r.number("dc_resistance", cfg.rect_dc_resistance);
        r.number("dc_capacitance", cfg.rect_dc_capacitance);
        r.number("ac_inductance", cfg.rect_ac_inductance);
        r.number("ac_resistance", cfg.rect_ac_resistance);
        r.number("diode_r_on", cfg.rect_diode_r_on);
        r.number("diode_r_off", cfg.rect_diode_r_off);
        r.finish();
    }
    {
        SectionReader r("linear", section("linear"));
        r.boolean("enabled", cfg.linear_enabled);
        const bool direct = r.has("resistance") || r.has("inductance");
        const bool sized = r.has("power") || r.has("power_factor");
        if (direct && sized)
            r.fail(r.has("power") ? "power" : "power_factor",
                   "give either resistance/inductance or power/power_factor, not both");
        r.number("resistance", cfg.linear_resistance);
        r.number("inductance", cfg.linear_inductance);
        r.number("power", cfg.linear_power);
        r.number("power_factor", cfg.linear_power_factor);
        r.finish();
    }
    {
        SectionReader r("sapf", section("sapf"));
        r.boolean("enabled", cfg.sapf_enabled);
        r.number("engage_time", cfg.sapf_engage_time);
        r.number("v_dc_ref", cfg.sapf_v_dc_ref);
        r.number("c_dc", cfg.sapf_c_dc);
        r.number("l_filter", cfg.sapf_l_filter);
        r.number("r_filter", cfg.sapf_r_filter);
        r.number("band", cfg.sapf_band);
        r.number("hp_cutoff", cfg.sapf_hp_cutoff);
        r.number("dc_kp", cfg.sapf_dc_kp);
        r.number("dc_ki", cfg.sapf_dc_ki);
        r.number("p_limit", cfg.sapf_p_limit);
        r.finish();
    }
    {
        SectionReader r("sim", section("sim"));
        r.number("dt", cfg.dt);
        r.number("t_end", cfg.t_end);
        r.stringList("record_channels", cfg.record_channels);
        r.finish();
    }

    validateScenario(cfg);
    return cfg;
}

ScenarioConfig loadScenario(const std::string& path) {
    std::filesystem::path p(path);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    ScenarioConfig cfg = parseScenario(ss.str());
    cfg.name = p.stem().string();
    return cfg;
}

void validateScenario(const ScenarioConfig& cfg) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };

    require(cfg.frequency > 0.0, "[bus].frequency: must be > 0");
    require(cfg.bus_voltage_ll_rms > 0.0, "[bus].voltage_ll_rms: must be > 0");
    require(cfg.bus_series_r >= 0.0, "[bus].series_r: must be >= 0");
    require(cfg.bus_series_l >= 0.0, "[bus].series_l: must be >= 0");

    require(cfg.dt >= 1e-6 && cfg.dt <= 50e-6, "[sim].dt: must be within [1e-6, 50e-6] s");
    require(cfg.t_end >= 10.0 / cfg.frequency,
            "[sim].t_end: must cover at least 10 fundamental cycles");
    for (const auto& name : cfg.record_channels) {
        const auto& all = allChannelNames();
        require(std::find(all.begin(), all.end(), name) != all.end(),
                "[sim].record_channels: unknown channel '" + name + "'");
    }

    if (cfg.pv_enabled) {
        require(cfg.pv_v_mpp > 0.0 && cfg.pv_v_mpp < cfg.pv_v_oc,
                "[pv].v_mpp: require 0 < v_mpp < v_oc");
        require(cfg.pv_p_mpp / cfg.pv_v_mpp < cfg.pv_i_sc,
                "[pv].i_sc: require p_mpp/v_mpp < i_sc");
        require(cfg.pv_irradiance >= 0.0, "[pv].irradiance: must be >= 0");
        require(cfg.mppt_step > 0.0, "[pv].mppt_step: must be > 0");
        require(cfg.mppt_period >= cfg.dt, "[pv].mppt_period: must be >= [sim].dt");
        require(cfg.mppt_v_initial >= 0.0 && cfg.mppt_v_initial <= cfg.pv_v_oc,
                "[pv].mppt_v_initial: must lie in [0, v_oc]");
    }
    if (cfg.mhp_enabled) {
        require(cfg.mhp_rated_power > 0.0, "[mhp].rated_power: must be > 0");
        require(cfg.mhp_mech_power >= 0.0, "[mhp].mech_power: must be >= 0");
        require(cfg.mhp_inertia_h > 0.0, "[mhp].inertia_h: must be > 0");
        require(cfg.elc_n_steps >= 0 && cfg.elc_n_steps <= 32,
                "[elc].n_steps: must lie in [0, 32]");
        require(cfg.elc_step_power >= 0.0, "[elc].step_power: must be >= 0");
        require(cfg.elc_deadband >= 0.0, "[elc].deadband: must be >= 0");
        require(cfg.elc_gain >= 0.0, "[elc].gain: must be >= 0");
        require(cfg.elc_period >= cfg.dt, "[elc].period: must be >= [sim].dt");
    }
    if (cfg.rectifier_enabled) {
        require(cfg.rect_dc_resistance > 0.0, "[rectifier].dc_resistance: must be > 0");
        require(cfg.rect_dc_capacitance > 0.0, "[rectifier].dc_capacitance: must be > 0");
        require(cfg.rect_ac_inductance > 0.0, "[rectifier].ac_inductance: must be > 0");
        require(cfg.rect_ac_resistance >= 0.0, "[rectifier].ac_resistance: must be >= 0");
        require(cfg.rect_diode_r_on > 0.0, "[rectifier].diode_r_on: must be > 0");
        require(cfg.rect_diode_r_off / cfg.rect_diode_r_on >= 1e6,
                "[rectifier].diode_r_off: require r_off/r_on >= 1e6");
    }
    if (cfg.linear_enabled) {
        if (cfg.linear_power > 0.0) {
            require(cfg.linear_power_factor > 0.0 && cfg.linear_power_factor <= 1.0,
                    "[linear].power_factor: must lie in (0, 1]");
        } else {
            require(cfg.linear_resistance > 0.0, "[linear].resistance: must be > 0");
            require(cfg.linear_inductance >= 0.0, "[linear].inductance: must be >= 0");
        }
    }
    if (cfg.sapf_enabled) {
        require(cfg.sapf_band > 0.0, "[sapf].band: must be > 0");
        require(cfg.sapf_v_dc_ref > std::sqrt(2.0) * cfg.bus_voltage_ll_rms,
                "[sapf].v_dc_ref: must exceed the peak line-line bus voltage");
        require(cfg.sapf_c_dc > 0.0, "[sapf].c_dc: must be > 0");
        require(cfg.sapf_l_filter > 0.0, "[sapf].l_filter: must be > 0");
        require(cfg.sapf_r_filter >= 0.0, "[sapf].r_filter: must be >= 0");
        require(cfg.sapf_hp_cutoff > 0.0 && cfg.sapf_hp_cutoff * cfg.dt < 0.5,
                "[sapf].hp_cutoff: require 0 < cutoff and cutoff*dt < 0.5");
        require(cfg.sapf_engage_time >= 0.0 && cfg.sapf_engage_time <= cfg.t_end,
                "[sapf].engage_time: must lie in [0, t_end]");
        require(cfg.sapf_p_limit > 0.0, "[sapf].p_limit: must be > 0");
    }
}

} // namespace gridsim
