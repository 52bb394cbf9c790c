#include <cmath>

#include <doctest.h>

#include "gridsim/hydro.hpp"

using namespace gridsim;

TEST_CASE("balanced power leaves the rotor speed unchanged") {
    HydroGenerator g;
    g.mech_power = 50e3;
    g.speed_pu = 1.0;
    for (int n = 0; n < 1000; ++n) generatorStep(g, 30e3, 20e3, 1e-4);
    CHECK(g.speed_pu == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("swing equation arithmetic") {
    // 50 kW surplus on a 50 kW, H = 0.5 s machine: accel = 50e3 / (2*0.5*50e3) = 1 pu/s,
    // so one 0.5 s step with no load adds 0.5 pu.
    HydroGenerator g;
    g.rated_power = 50e3;
    g.mech_power = 50e3;
    g.inertia_h = 0.5;
    g.speed_pu = 1.0;
    generatorStep(g, 0.0, 0.0, 0.5);
    CHECK(g.speed_pu == doctest::Approx(1.5).epsilon(1e-12));

    // symmetric deficit decelerates at the same rate
    g.speed_pu = 1.0;
    generatorStep(g, 100e3, 0.0, 0.5);
    CHECK(g.speed_pu == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dispatcher example: gain 100, error 0.035 turns on 4 steps") {
    ElcState e;
    e.n_steps = 8;
    e.gain = 100.0;
    e.deadband = 0.005;
    elcDispatch(e, 1.035);
    CHECK(elcActiveSteps(e) == 4);  // round(3.5) rounds half up
    CHECK(e.active_mask == 0b1111u);
    CHECK(elcDumpPower(e) == doctest::Approx(4 * e.step_power));
}

TEST_CASE("dispatcher rounds an exact half up") {
    // gain and error chosen so gain * error == 3.5 exactly in binary:
    // error = 7/256 is a dyadic rational and 128 * 7/256 = 3.5.
    ElcState e;
    e.n_steps = 8;
    e.gain = 128.0;
    e.deadband = 0.005;
    elcDispatch(e, 1.02734375);  // speed error exactly 7/256
    CHECK(elcActiveSteps(e) == 4);
}

TEST_CASE("dispatcher holds inside the deadband") {
    ElcState e;
    e.gain = 100.0;
    e.deadband = 0.005;
    elcDispatch(e, 1.04);
    const auto mask = e.active_mask;
    CHECK(elcActiveSteps(e) == 4);
    elcDispatch(e, 1.004);   // |error| < deadband: no re-dispatch
    CHECK(e.active_mask == mask);
    elcDispatch(e, 0.996);
    CHECK(e.active_mask == mask);
    elcDispatch(e, 0.99);    // outside: drops to zero
    CHECK(elcActiveSteps(e) == 0);
}

TEST_CASE("dispatcher saturates at the step count and at zero") {
    ElcState e;
    e.n_steps = 8;
    e.gain = 100.0;
    e.deadband = 0.005;
    elcDispatch(e, 1.5);
    CHECK(elcActiveSteps(e) == 8);
    elcDispatch(e, 0.5);
    CHECK(elcActiveSteps(e) == 0);
}

TEST_CASE("dispatched steps are monotone in the speed error") {
    ElcState e;
    e.gain = 100.0;
    e.deadband = 0.005;
    int prev = 0;
    for (double err = 0.006; err <= 0.1; err += 0.001) {
        elcDispatch(e, 1.0 + err);
        const int steps = elcActiveSteps(e);
        CHECK(steps >= prev);
        prev = steps;
    }
    CHECK(prev == 8);
}

TEST_CASE("closed loop rejects a 20 kW load step within 2 seconds") {
    // Generator at 50 kW mechanical feeding a 50 kW electrical load; at t = 1 s
    // the load drops to 30 kW and the dump dispatcher must absorb the surplus.
    HydroGenerator g;
    g.rated_power = 50e3;
    g.mech_power = 50e3;
    g.inertia_h = 1.0;
    ElcState e;
    e.n_steps = 8;
    e.step_power = 10e3;
    e.gain = 1000.0;
    e.deadband = 5e-4;

    const double dt = 1e-4;
    const double elc_period = 10e-3;
    const int elc_every = static_cast<int>(std::llround(elc_period / dt));
    const int n_total = static_cast<int>(std::llround(4.0 / dt));
    bool ok_after_2s = true;
    double worst = 0.0;
    for (int n = 0; n < n_total; ++n) {
        const double t = n * dt;
        const double p_load = (t < 1.0) ? 50e3 : 30e3;
        generatorStep(g, p_load, elcDumpPower(e), dt);
        if ((n + 1) % elc_every == 0) elcDispatch(e, g.speed_pu);
        if (t >= 3.0) {  // 2 s after the event
            const double dev = std::abs(g.speed_pu - 1.0);
            if (dev > worst) worst = dev;
            if (dev > 0.01) ok_after_2s = false;
        }
    }
    CHECK(ok_after_2s);
    CHECK(worst <= 0.01);
    // the surplus demands two 10 kW steps; proportional droop may add one more
    const int steps = elcActiveSteps(e);
    CHECK(steps >= 2);
    CHECK(steps <= 3);
}
