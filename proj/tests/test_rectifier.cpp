#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "gridsim/errors.hpp"
#include "gridsim/rectifier.hpp"
#include "gridsim/spectrum.hpp"
#include "gridsim/types.hpp"

using namespace gridsim;

namespace {

ThreePhase balancedCosine(double v_peak, double theta) {
    return {v_peak * std::cos(theta), v_peak * std::cos(theta - 2.0 * kPi / 3.0),
            v_peak * std::cos(theta + 2.0 * kPi / 3.0)};
}

// Independent reference simulator for the same circuit. Instead of the 8x8
// linear solve it eliminates the bridge nodes in closed form:
//   - trial conduction pattern -> per-phase conductances gu_k, gd_k
//   - backward Euler branch:   i_k = (b_k - v'_k) / a,  b_k = v_bus_k + (L/dt) i_k_old
//   - terminal KCL:            i_k = g_k (v'_k - v_p) + gd_k v_dc
//   - the floating bridge forces sum i_k = 0, which pins v_p scalar-wise.
// The dc capacitor voltage is frozen during the step and updated afterwards,
// so the algebra path is genuinely different from the production solver; a
// 40x finer step makes the discretization mismatch negligible.
struct BridgeOracle {
    double r_load, c_dc, l_ac, r_ac, r_on, r_off;
    double v_dc = 0.0;
    std::array<double, 3> i{0.0, 0.0, 0.0};
    std::array<bool, 6> on{};

    std::array<double, 3> step(const ThreePhase& v_bus, double dt) {
        const double a = l_ac / dt + r_ac;
        std::array<double, 3> b;
        for (int k = 0; k < 3; ++k) b[k] = v_bus(k) + (l_ac / dt) * i[k];

        std::array<bool, 6> trial = on;
        std::array<double, 3> vk{}, ik{};
        double v_p = 0.0;
        for (int it = 0; it < 30; ++it) {
            double num = 0.0, den = 0.0, bsum = 0.0;
            std::array<double, 3> g{}, gd{};
            for (int k = 0; k < 3; ++k) {
                const double gu_k = 1.0 / (trial[k] ? r_on : r_off);
                gd[k] = 1.0 / (trial[k + 3] ? r_on : r_off);
                g[k] = gu_k + gd[k];
                bsum += b[k];
                num += (b[k] - a * gd[k] * v_dc) / (1.0 + a * g[k]);
                den += a * g[k] / (1.0 + a * g[k]);
            }
            v_p = (bsum - num) / den;
            std::array<bool, 6> next = trial;
            for (int k = 0; k < 3; ++k) {
                vk[k] = (b[k] + a * g[k] * v_p - a * gd[k] * v_dc) / (1.0 + a * g[k]);
                ik[k] = (b[k] - vk[k]) / a;
                next[k] = vk[k] - v_p > 0.0;
                next[k + 3] = (v_p - v_dc) - vk[k] > 0.0;
            }
            if (next == trial) break;
            trial = next;
        }
        on = trial;
        i = ik;

        double i_rail = 0.0;
        for (int k = 0; k < 3; ++k)
            i_rail += (vk[k] - v_p) / (trial[k] ? r_on : r_off);
        // backward Euler on the R-C load with the rail current just found
        v_dc = (v_dc + (dt / c_dc) * i_rail) / (1.0 + dt / (r_load * c_dc));
        return i;
    }
};

} // namespace

TEST_CASE("dead circuit stays dead") {
    RectifierLoad r;
    for (int n = 0; n < 1000; ++n) {
        const ThreePhase i = rectifierStep(r, ThreePhase::Zero(), 20e-6);
        CHECK(i.cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK(std::abs(r.v_dc) <= 1e-12);
}

TEST_CASE("parameter validation") {
    RectifierLoad r;
    CHECK_THROWS_AS(rectifierStep(r, ThreePhase::Zero(), 60e-6), ConfigError);
    CHECK_THROWS_AS(rectifierStep(r, ThreePhase::Zero(), 0.0), ConfigError);
    r.diode_r_off = 100.0;
    CHECK_THROWS_AS(rectifierStep(r, ThreePhase::Zero(), 20e-6), ConfigError);
}

TEST_CASE("precharged dc capacitor discharges through the load only") {
    // With a dead bus the diodes block, so v_dc must follow the R-C decay.
    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.dc_capacitance = 5000e-6;
    r.v_dc = 500.0;
    const double dt = 20e-6;
    const double tau = r.dc_resistance * r.dc_capacitance;
    const int n_tau = static_cast<int>(std::llround(tau / dt));
    for (int n = 0; n < n_tau; ++n) rectifierStep(r, ThreePhase::Zero(), dt);
    CHECK(r.v_dc == doctest::Approx(500.0 * std::exp(-1.0)).epsilon(0.005));
}

TEST_CASE("phase currents sum to zero at every step") {
    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.ac_inductance = 1e-3;
    const double dt = 20e-6;
    const double v_peak = 400.0 * std::sqrt(2.0 / 3.0);
    double worst = 0.0;
    for (int n = 0; n < 50000; ++n) {
        const ThreePhase i = rectifierStep(r, balancedCosine(v_peak, 2.0 * kPi * 50.0 * n * dt), dt);
        const double rel = std::abs(i.sum()) / std::max(1.0, i.cwiseAbs().maxCoeff());
        if (rel > worst) worst = rel;
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("waveforms match an independent fine-step reference") {
    const double v_ll = 400.0;
    const double v_peak = v_ll * std::sqrt(2.0 / 3.0);
    const double f = 50.0;

    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.dc_capacitance = 5000e-6;
    r.ac_inductance = 1e-3;
    r.ac_resistance = 0.05;

    BridgeOracle o;
    o.r_load = r.dc_resistance;
    o.c_dc = r.dc_capacitance;
    o.l_ac = r.ac_inductance;
    o.r_ac = r.ac_resistance;
    o.r_on = r.diode_r_on;
    o.r_off = r.diode_r_off;

    const double dt = 20e-6;
    const double dt_o = 0.5e-6;
    const int cycles = 20;
    const int per_cycle = static_cast<int>(std::llround(1.0 / (f * dt)));
    const int per_cycle_o = static_cast<int>(std::llround(1.0 / (f * dt_o)));

    double vdc_sum = 0.0, i_sq = 0.0;
    int n_avg = 0;
    for (int n = 0; n < cycles * per_cycle; ++n) {
        const ThreePhase i = rectifierStep(r, balancedCosine(v_peak, 2.0 * kPi * f * n * dt), dt);
        if (n >= (cycles - 2) * per_cycle) {
            vdc_sum += r.v_dc;
            i_sq += i(0) * i(0);
            ++n_avg;
        }
    }
    double vdc_sum_o = 0.0, i_sq_o = 0.0;
    int n_avg_o = 0;
    for (int n = 0; n < cycles * per_cycle_o; ++n) {
        const auto i = o.step(balancedCosine(v_peak, 2.0 * kPi * f * n * dt_o), dt_o);
        if (n >= (cycles - 2) * per_cycle_o) {
            vdc_sum_o += o.v_dc;
            i_sq_o += i[0] * i[0];
            ++n_avg_o;
        }
    }
    const double vdc_mean = vdc_sum / n_avg;
    const double vdc_mean_o = vdc_sum_o / n_avg_o;
    const double i_rms = std::sqrt(i_sq / n_avg);
    const double i_rms_o = std::sqrt(i_sq_o / n_avg_o);

    CHECK(vdc_mean == doctest::Approx(vdc_mean_o).epsilon(0.02));
    CHECK(i_rms == doctest::Approx(i_rms_o).epsilon(0.02));

    // settled mean dc voltage sits just below the line-line peak
    CHECK(vdc_mean >= 0.90 * std::sqrt(2.0) * v_ll);
    CHECK(vdc_mean <= 1.00 * std::sqrt(2.0) * v_ll);

    CHECK(r.fixed_point_misses <= 5);
}

TEST_CASE("characteristic six-pulse spectrum: 5th and 7th dominate") {
    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.ac_inductance = 1e-3;
    const double dt = 20e-6;
    const double f = 50.0;
    const int per_cycle = static_cast<int>(std::llround(1.0 / (f * dt)));
    std::vector<double> i_a;
    for (int n = 0; n < 24 * per_cycle; ++n) {
        const ThreePhase i =
            rectifierStep(r, balancedCosine(400.0 * std::sqrt(2.0 / 3.0), 2.0 * kPi * f * n * dt), dt);
        if (n >= 20 * per_cycle) i_a.push_back(i(0));
    }
    const HarmonicSpectrum s = spectrum(i_a, dt, f, 4, 15);
    const double h5 = s.magnitude[5] / s.magnitude[1];
    const double h7 = s.magnitude[7] / s.magnitude[1];
    const double h11 = s.magnitude[11] / s.magnitude[1];
    const double h13 = s.magnitude[13] / s.magnitude[1];
    CHECK(h5 > 0.02);
    CHECK(h5 > h7);
    CHECK(h7 > h11);
    CHECK(h11 >= h13);
    // even and triplen orders are structurally absent
    for (int h : {2, 3, 4, 6, 8, 9, 10, 12}) {
        CHECK(s.magnitude[h] / s.magnitude[1] < 0.02);
        CHECK(s.magnitude[h] < 0.25 * s.magnitude[5]);
    }
}

TEST_CASE("reported conduction pattern is consistent with the solved step") {
    // Reconstruct the internal bridge node voltages from the public states
    // and verify every diode respects its flag: conducting diodes carry
    // forward current, blocking diodes see no meaningful forward current.
    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.ac_inductance = 1e-3;
    const double dt = 20e-6;
    const double f = 50.0;
    const double v_peak = 400.0 * std::sqrt(2.0 / 3.0);
    const double l_dt = r.ac_inductance / dt;
    const double a = l_dt + r.ac_resistance;

    long skipped = 0;
    for (int n = 0; n < 20000; ++n) {
        const ThreePhase v_bus = balancedCosine(v_peak, 2.0 * kPi * f * n * dt);
        const ThreePhase i_prev = r.i_phase;
        const double v_dc_prev = r.v_dc;
        const std::uint64_t misses_before = r.fixed_point_misses;
        const ThreePhase i = rectifierStep(r, v_bus, dt);
        if (r.fixed_point_misses != misses_before) {
            // the pattern never settled this step, so the reported flags do
            // not describe the solved state; skip the consistency check
            ++skipped;
            continue;
        }

        // branch KVL gives the bridge terminal potentials
        ThreePhase v_node;
        for (int k = 0; k < 3; ++k) v_node(k) = v_bus(k) + l_dt * i_prev(k) - a * i(k);
        // +rail KCL gives the rail potential
        const double i_dc = r.v_dc / r.dc_resistance +
                            r.dc_capacitance * (r.v_dc - v_dc_prev) / dt;
        double g_sum = 0.0, gv_sum = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double gu = 1.0 / (r.conducting[k] ? r.diode_r_on : r.diode_r_off);
            g_sum += gu;
            gv_sum += gu * v_node(k);
        }
        const double v_p = (gv_sum - i_dc) / g_sum;
        const double v_n = v_p - r.v_dc;

        for (int k = 0; k < 3; ++k) {
            const double vf_up = v_node(k) - v_p;  // forward drop, upper diode
            const double vf_dn = v_n - v_node(k);  // forward drop, lower diode
            // Conducting diodes are judged in voltage space: dividing the
            // reconstruction by r_on would amplify microvolt-level solver
            // noise into milliamps. A conducting diode must sit within a
            // millivolt of forward bias and drop well under a volt.
            if (r.conducting[k]) {
                CHECK(vf_up >= -1e-3);
                CHECK(vf_up <= 1.0);
            } else {
                CHECK(vf_up / r.diode_r_off <= 1e-3);  // leakage under a milliamp
            }
            if (r.conducting[k + 3]) {
                CHECK(vf_dn >= -1e-3);
                CHECK(vf_dn <= 1.0);
            } else {
                CHECK(vf_dn / r.diode_r_off <= 1e-3);
            }
        }
    }
    CHECK(skipped <= 20);  // unsettled steps must stay rare
}

TEST_CASE("energy balance closes within one percent") {
    RectifierLoad r;
    r.dc_resistance = 10.0;
    r.ac_inductance = 1e-3;
    const double dt = 20e-6;
    const double f = 50.0;
    const double v_peak = 400.0 * std::sqrt(2.0 / 3.0);
    const int per_cycle = static_cast<int>(std::llround(1.0 / (f * dt)));

    // settle first, then account over ten cycles
    for (int n = 0; n < 10 * per_cycle; ++n)
        rectifierStep(r, balancedCosine(v_peak, 2.0 * kPi * f * n * dt), dt);

    const double e_cap0 = 0.5 * r.dc_capacitance * r.v_dc * r.v_dc;
    const double e_ind0 = 0.5 * r.ac_inductance * r.i_phase.squaredNorm();
    double e_in = 0.0, e_load = 0.0, e_series = 0.0;
    for (int n = 10 * per_cycle; n < 20 * per_cycle; ++n) {
        const ThreePhase v_bus = balancedCosine(v_peak, 2.0 * kPi * f * n * dt);
        const ThreePhase i = rectifierStep(r, v_bus, dt);
        e_in += v_bus.dot(i) * dt;
        e_load += r.v_dc * r.v_dc / r.dc_resistance * dt;
        e_series += r.ac_resistance * i.squaredNorm() * dt;
    }
    const double e_cap1 = 0.5 * r.dc_capacitance * r.v_dc * r.v_dc;
    const double e_ind1 = 0.5 * r.ac_inductance * r.i_phase.squaredNorm();
    const double e_out = e_load + e_series + (e_cap1 - e_cap0) + (e_ind1 - e_ind0);
    CHECK(e_out == doctest::Approx(e_in).epsilon(0.01));
}
