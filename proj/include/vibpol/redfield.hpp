// redfield.hpp — secular Redfield generator assembled directly from the
// interaction-picture equation by exhaustive enumeration of secular index
// quadruples. Deliberately brute-force: this is the ground-truth oracle the
// closed-form generators are checked against.

#pragma once

#include "vibpol/bath.hpp"
#include "vibpol/generators.hpp"
#include "vibpol/model.hpp"
#include "vibpol/superop.hpp"

#include <vector>

namespace vibpol {

struct SecularCombo {
    int p, q, r, s;   // state indices
    int tick;         // tick_pq == tick_sr
};

inline std::vector<SecularCombo> enumerate_secular(const ModelBasis& basis) {
    const int d = basis.dim();
    std::vector<SecularCombo> combos;
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) {
                    const int tpq = basis.transition_ticks(p, q);
                    const int tsr = basis.transition_ticks(s, r);
                    if (tpq == tsr) combos.push_back({p, q, r, s, tpq});
                }
    return combos;
}

// Bath-weight of one combo:
//   common:      (sum_i u_ip u_qi) * (sum_j u_jr u_sj)
//   independent:  sum_i u_ip u_qi u_ir u_si
// with u_ip u_qi = <p|i><i|q>.
inline Complex combo_weight(const SecularCombo& c, const ModelBasis& basis,
                            BathTopology topology) {
    const int n = basis.n();
    if (topology == BathTopology::Common) {
        Complex pq(0.0, 0.0), rs(0.0, 0.0);
        for (int i = 1; i <= n; ++i) {
            pq += basis.overlap(i, c.p) * std::conj(basis.overlap(i, c.q));
            rs += basis.overlap(i, c.r) * std::conj(basis.overlap(i, c.s));
        }
        return pq * rs;
    }
    Complex w(0.0, 0.0);
    for (int i = 1; i <= n; ++i)
        w += basis.overlap(i, c.p) * std::conj(basis.overlap(i, c.q)) *
             basis.overlap(i, c.r) * std::conj(basis.overlap(i, c.s));
    return w;
}

// 2 S(omega) looked up by tick so the oracle consumes the same rate inputs as
// the closed-form generators; emission rates sit at positive ticks.
inline double rate_for_tick(const RateSet& r, int tick) {
    switch (tick) {
        case 0: return r.gamma_phi;
        case 1: return r.Gamma_e;
        case -1: return r.Gamma_a;
        case 2: return r.gamma_e;
        case -2: return r.gamma_a;
        default: throw std::out_of_range("rate_for_tick: tick outside [-2, 2]");
    }
}

// For each secular combo (p,q,r,s):
//   weight * S(omega_sr) * ( [ |r><s| rho, |p><q| ] + h.c. )
// with S = rate_for_tick / 2 (Lamb shift dropped).
inline Liouvillian assemble_redfield(const ModelBasis& basis, const RateSet& rates,
                                     BathTopology topology) {
    if (auto err = validate_rates(rates))
        throw std::invalid_argument("assemble_redfield: " + *err);
    const int d = basis.dim();
    SuperOpBuilder b(d);
    for (const auto& c : enumerate_secular(basis)) {
        const Complex w = combo_weight(c, basis, topology);
        if (std::abs(w) < 1e-15) continue;
        const int tick_sr = basis.transition_ticks(c.s, c.r);
        const Complex amp = w * 0.5 * rate_for_tick(rates, tick_sr);
        // [ s_rs rho, s_pq ] = s_rs rho s_pq - delta_qr s_ps rho, plus h.c.
        b.add_entry(c.r, c.q, c.s, c.p, amp);
        if (c.q == c.r) {
            Eigen::MatrixXcd ps = elementary_op(d, c.p, c.s);
            b.add_left(ps, -amp);
            b.add_right(ps.adjoint(), -std::conj(amp));
        }
        b.add_entry(c.q, c.r, c.p, c.s, std::conj(amp));
    }

    Liouvillian L;
    L.variant = Variant::Corrected;
    L.bath = topology;
    L.source = GeneratorSource::RedfieldOracle;
    L.n = basis.n();
    L.op_dim = d;
    L.rates = rates;
    L.coherent = coherent_part(basis);
    L.dissipative = b.build();
    return L;
}

}  // namespace vibpol
