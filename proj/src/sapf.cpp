#include "gridsim/sapf.hpp"

#include "gridsim/errors.hpp"
#include "gridsim/transforms.hpp"

namespace gridsim {

PqSample computePq(const AlphaBeta& v, const AlphaBeta& i) {
    PqSample s;
    s.p = v(0) * i(0) + v(1) * i(1);
    s.q = v(1) * i(0) - v(0) * i(1);
    return s;
}

AlphaBeta referenceCurrents(const AlphaBeta& v, double p, double q, double eps_v2) {
    const double n2 = v.squaredNorm();
    if (!(n2 >= eps_v2))
        throw DegenerateVoltageError("referenceCurrents: |v|^2 below floor");
    return AlphaBeta(v(0) * p + v(1) * q, v(1) * p - v(0) * q) / n2;
}

ThreePhase SapfController::reference(const ThreePhase& v_bus, const ThreePhase& i_load,
                                     double v_dc) {
    const AlphaBeta v_ab = clarke(v_bus).head<2>();
    const AlphaBeta i_ab = clarke(i_load).head<2>();
    const PqSample pq = computePq(v_ab, i_ab);
    if (!m_primed) primeFilter(pq.p);
    const double p_osc = m_hp.step(pq.p);
    const double p_loss = m_dc_pi.step(m_v_dc_ref - v_dc);
    // Injecting -p_loss of real power makes the filter absorb p_loss from the
    // bus, which is what charges the dc link toward its reference.
    const double p_comp = p_osc - p_loss;
    const AlphaBeta i_ref_ab = referenceCurrents(v_ab, p_comp, pq.q);
    return inverseClarke(i_ref_ab);
}

ThreePhase inverterStep(SapfInverter& inv, const std::array<int, 3>& gates,
                        const ThreePhase& v_bus, double dt) {
    const double half_dc = 0.5 * inv.v_dc;
    ThreePhase u;  // leg voltage minus bus voltage
    for (int k = 0; k < 3; ++k)
        u(k) = (gates[k] ? half_dc : -half_dc) - v_bus(k);
    const double common = u.mean();

    // L di/dt = u - common - R i, backward Euler in i
    const double a = dt / inv.l_filter;
    inv.i_inj = (inv.i_inj + a * (u.array() - common).matrix()) / (1.0 + a * inv.r_filter);

    double i_dc = 0.0;  // current drawn from the dc link by the legs
    for (int k = 0; k < 3; ++k)
        if (gates[k]) i_dc += inv.i_inj(k);
    inv.v_dc -= dt / inv.c_dc * i_dc;
    inv.gates = gates;
    if (inv.v_dc < 0.0)
        throw SimulationError("inverterStep: dc link voltage went negative");
    return inv.i_inj;
}

} // namespace gridsim
