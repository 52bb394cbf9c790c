#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "gridsim/errors.hpp"
#include "gridsim/trace.hpp"

using namespace gridsim;

namespace {

SimulationTrace sampleTrace() {
    SimulationTrace tr(1e-3);
    tr.channel("v_bus_a") = {1.0, -2.5, 0.000123456789, 1e6};
    tr.channel("i_source_a") = {0.0, 3.14159265358979, -1e-12, 42.0};
    return tr;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("csv layout: t_s first, channels lexicographic, LF endings") {
    const std::string csv = sampleTrace().toCsv();
    CHECK(csv.rfind("t_s,i_source_a,v_bus_a\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
    // 9 significant digits survive
    CHECK(csv.find("3.14159265") != std::string::npos);
    CHECK(csv.find("0.000123456789") != std::string::npos);
}

TEST_CASE("csv round-trips byte-identically") {
    const SimulationTrace tr = sampleTrace();
    const std::string path = "trace_roundtrip_test.csv";
    tr.writeCsv(path);
    const SimulationTrace back = SimulationTrace::readCsv(path);
    CHECK(back.dt() == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(back.channelNames() == tr.channelNames());
    CHECK(back.length() == tr.length());
    // writing the re-read trace reproduces the file byte for byte
    const std::string path2 = "trace_roundtrip_test2.csv";
    back.writeCsv(path2);
    CHECK(slurp(path) == slurp(path2));
    CHECK(!slurp(path).empty());
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("write is atomic: no temp file lingers") {
    const std::string path = "trace_atomic_test.csv";
    sampleTrace().writeCsv(path);
    CHECK(std::filesystem::exists(path));
    int files_like = 0;
    for (const auto& e : std::filesystem::directory_iterator(".")) {
        const std::string name = e.path().filename().string();
        if (name.rfind("trace_atomic_test", 0) == 0) ++files_like;
    }
    CHECK(files_like == 1);
    std::remove(path.c_str());
}

TEST_CASE("values survive a round trip to full precision") {
    const SimulationTrace tr = sampleTrace();
    const std::string path = "trace_precision_test.csv";
    tr.writeCsv(path);
    const SimulationTrace back = SimulationTrace::readCsv(path);
    for (const auto& name : tr.channelNames()) {
        const auto& a = tr.channel(name);
        const auto& b = back.channel(name);
        REQUIRE(a.size() == b.size());
        for (std::size_t n = 0; n < a.size(); ++n) {
            if (a[n] == 0.0) CHECK(b[n] == 0.0);
            else CHECK(b[n] == doctest::Approx(a[n]).epsilon(1e-8));
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("window and index arithmetic") {
    SimulationTrace tr(0.5);
    tr.channel("x") = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(tr.indexAt(0.0) == 0);
    CHECK(tr.indexAt(1.0) == 2);
    CHECK(tr.indexAt(2.49) == 5);
    const std::vector<double> w = tr.window("x", 1.0, 2.5);
    REQUIRE(w.size() == 3);
    CHECK(w[0] == 2.0);
    CHECK(w[2] == 4.0);
}

TEST_CASE("serializing mismatched channel lengths is rejected") {
    SimulationTrace tr(1e-3);
    tr.channel("a") = {1.0, 2.0};
    tr.channel("b") = {1.0};
    CHECK_THROWS_AS(tr.toCsv(), ConfigError);
}

TEST_CASE("reader rejects malformed files") {
    const std::string path = "trace_malformed_test.csv";
    {
        std::ofstream out(path, std::ios::binary);
        out << "t_s,x\n0,1\n0.001,nonsense\n";
    }
    CHECK_THROWS_AS(SimulationTrace::readCsv(path), ConfigError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "x,y\n0,1\n";  // missing t_s column
    }
    CHECK_THROWS_AS(SimulationTrace::readCsv(path), ConfigError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "t_s,x\n0,1\n0.001\n";  // short row
    }
    CHECK_THROWS_AS(SimulationTrace::readCsv(path), ConfigError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "t_s,x\n0,1,7\n";  // extra field
    }
    CHECK_THROWS_AS(SimulationTrace::readCsv(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(SimulationTrace::readCsv("definitely_missing_file.csv"), ConfigError);
}

TEST_CASE("unknown channel access throws") {
    const SimulationTrace tr = sampleTrace();
    CHECK_THROWS_AS(tr.channel("no_such_channel"), InsufficientDataError);
    CHECK_THROWS_AS(tr.window("no_such_channel", 0.0, 1.0), InsufficientDataError);
    CHECK(tr.hasChannel("v_bus_a"));
    CHECK(!tr.hasChannel("v_bus_z"));
}
