#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include "gridsim/errors.hpp"
#include "gridsim/scenario.hpp"
#include "gridsim/toml_lite.hpp"

using namespace gridsim;

namespace {

std::string messageOf(const std::string& text) {
    try {
        parseScenario(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("empty text yields the stock configuration") {
    const ScenarioConfig cfg = parseScenario("");
    CHECK(cfg.bus_voltage_ll_rms == doctest::Approx(400.0));
    CHECK(cfg.frequency == doctest::Approx(50.0));
    CHECK(cfg.dt == doctest::Approx(20e-6));
    CHECK(cfg.pv_enabled);
    CHECK(cfg.mhp_enabled);
    CHECK(cfg.sapf_enabled);
    CHECK(cfg.rectifier_enabled);
    CHECK(cfg.linear_enabled);
    CHECK(cfg.record_channels.empty());
}

TEST_CASE("values are read section by section") {
    const ScenarioConfig cfg = parseScenario(
        "[bus]\n"
        "kind = \"thevenin\"\n"
        "voltage_ll_rms = 230.0\n"
        "series_r = 0.1\n"
        "series_l = 1e-4\n"
        "\n"
        "[pv]\n"
        "enabled = false\n"
        "p_mpp = 25e3   # comment after value\n"
        "\n"
        "[sapf]\n"
        "engage_time = 0.5\n"
        "v_dc_ref = 750.0\n"
        "\n"
        "[sim]\n"
        "dt = 25e-6\n"
        "t_end = 2.0\n"
        "record_channels = [\"v_bus_a\", \"i_source_a\"]\n");
    CHECK(cfg.bus_kind == BusKind::Thevenin);
    CHECK(cfg.bus_voltage_ll_rms == doctest::Approx(230.0));
    CHECK(cfg.bus_series_r == doctest::Approx(0.1));
    CHECK(!cfg.pv_enabled);
    CHECK(cfg.pv_p_mpp == doctest::Approx(25e3));
    CHECK(cfg.sapf_engage_time == doctest::Approx(0.5));
    CHECK(cfg.dt == doctest::Approx(25e-6));
    CHECK(cfg.t_end == doctest::Approx(2.0));
    REQUIRE(cfg.record_channels.size() == 2);
    CHECK(cfg.record_channels[0] == "v_bus_a");
    CHECK(scenarioChannels(cfg) == cfg.record_channels);
}

TEST_CASE("every channel is recorded when no subset is chosen") {
    const ScenarioConfig cfg = parseScenario("");
    CHECK(scenarioChannels(cfg) == allChannelNames());
    CHECK(allChannelNames().size() == 29);
}

TEST_CASE("unknown keys are named precisely") {
    CHECK(messageOf("[bus]\nvoltage = 400.0\n").find("[bus].voltage: unknown key") !=
          std::string::npos);
    CHECK(messageOf("[sapf]\nbandwidth = 2.0\n").find("[sapf].bandwidth: unknown key") !=
          std::string::npos);
}

TEST_CASE("unknown sections and top-level keys are rejected") {
    CHECK(messageOf("[battery]\nenabled = true\n").find("[battery]") != std::string::npos);
    CHECK_THROWS_AS(parseScenario("dt = 20e-6\n"), ConfigError);
}

TEST_CASE("duplicate keys are parse errors") {
    CHECK_THROWS_AS(parseScenario("[bus]\nfrequency = 50.0\nfrequency = 60.0\n"), ConfigError);
    CHECK_THROWS_AS(parseScenario("[bus]\n[sim]\n[bus]\n"), ConfigError);
}

TEST_CASE("type mismatches are rejected") {
    CHECK_THROWS_AS(parseScenario("[pv]\nenabled = 1.0\n"), ConfigError);
    CHECK_THROWS_AS(parseScenario("[bus]\nfrequency = \"fifty\"\n"), ConfigError);
    CHECK_THROWS_AS(parseScenario("[elc]\nn_steps = 2.5\n"), ConfigError);
}

TEST_CASE("out-of-range timestep names the offending key") {
    const std::string msg = messageOf("[sim]\ndt = 1.0\n");
    CHECK(msg.find("[sim].dt") != std::string::npos);
    CHECK_THROWS_AS(parseScenario("[sim]\ndt = 1e-9\n"), ConfigError);
}

TEST_CASE("t_end must cover ten cycles") {
    // Ten 50 Hz cycles take 0.2 s.
    CHECK(messageOf("[sim]\nt_end = 0.2\ndt = 20e-6\n").empty());
    CHECK(messageOf("[sim]\nt_end = 0.19\n").find("[sim].t_end") != std::string::npos);
    CHECK(messageOf("[sim]\nt_end = 0.05\n").find("[sim].t_end") != std::string::npos);
}

TEST_CASE("direct and sized linear load specs cannot be mixed") {
    const std::string msg = messageOf("[linear]\nresistance = 5.0\npower = 20e3\n");
    CHECK(msg.find("[linear].power") != std::string::npos);
    CHECK(messageOf("[linear]\npower = 20e3\npower_factor = 0.9\n").empty());
    CHECK(messageOf("[linear]\nresistance = 5.0\ninductance = 0.0\n").empty());
}

TEST_CASE("sapf dc reference must exceed the line-line peak") {
    const std::string msg =
        messageOf("[bus]\nvoltage_ll_rms = 400.0\n[sapf]\nv_dc_ref = 500.0\n");
    CHECK(msg.find("[sapf].v_dc_ref") != std::string::npos);
}

TEST_CASE("engage time beyond t_end is rejected") {
    CHECK(messageOf("[sapf]\nengage_time = 1.5\n[sim]\nt_end = 1.0\n")
              .find("[sapf].engage_time") != std::string::npos);
    CHECK(messageOf("[sapf]\nengage_time = 1.0\n[sim]\nt_end = 1.0\n").empty());
}

TEST_CASE("disabled sections skip their validation") {
    // nonsense PV limits pass once the block is disabled
    CHECK_NOTHROW(parseScenario("[pv]\nenabled = false\nv_mpp = -5.0\n"));
    CHECK_THROWS_AS(parseScenario("[pv]\nv_mpp = -5.0\n"), ConfigError);
}

TEST_CASE("record_channels entries must name real channels") {
    CHECK(messageOf("[sim]\nrecord_channels = [\"v_bus_q\"]\n")
              .find("[sim].record_channels") != std::string::npos);
}

TEST_CASE("parse errors carry the line number") {
    try {
        parseScenario("[bus]\nfrequency = 50.0\nwhat is this\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("scenario name comes from the file stem") {
    const std::string path = "scenario_name_test.toml";
    {
        std::ofstream out(path);
        out << "[sim]\nt_end = 1.0\n";
    }
    const ScenarioConfig cfg = loadScenario(path);
    CHECK(cfg.name == "scenario_name_test");
    std::remove(path.c_str());
    CHECK_THROWS_AS(loadScenario("missing_scenario_file.toml"), ConfigError);
}

TEST_CASE("toml subset parses numbers in engineering notation") {
    const toml::Document doc = toml::parse("[x]\na = 50e3\nb = -1.5e-4\nc = 7\nd = true\n");
    const auto& x = doc.sections.at("x");
    CHECK(std::get<double>(x.at("a")) == doctest::Approx(50e3));
    CHECK(std::get<double>(x.at("b")) == doctest::Approx(-1.5e-4));
    CHECK(std::get<double>(x.at("c")) == doctest::Approx(7.0));
    CHECK(std::get<bool>(x.at("d")) == true);
}
