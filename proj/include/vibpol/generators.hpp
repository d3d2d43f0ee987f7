// generators.hpp — closed-form Liouvillians for the vibrational-polariton
// single-excitation manifold: corrected and DP variants, common and
// independent (site-local) bath topologies.

#pragma once

#include "vibpol/bath.hpp"
#include "vibpol/model.hpp"
#include "vibpol/superop.hpp"

namespace vibpol {

enum class Variant { Corrected, Dp };
enum class BathTopology { Common, Independent };
enum class GeneratorSource { ClosedForm, RedfieldOracle };

inline const char* to_string(Variant v) { return v == Variant::Corrected ? "corrected" : "dp"; }
inline const char* to_string(BathTopology b) {
    return b == BathTopology::Common ? "common" : "independent";
}

struct Liouvillian {
    Variant variant = Variant::Corrected;
    BathTopology bath = BathTopology::Common;
    GeneratorSource source = GeneratorSource::ClosedForm;
    int n = 0;          // number of molecules
    int op_dim = 0;     // N+1
    RateSet rates;
    SparseSuperOp coherent;     // rho -> -i [H_S, rho]
    SparseSuperOp dissipative;

    SparseSuperOp full() const { return coherent + dissipative; }
};

// rho -> -i [H_S, rho]; H_S diagonal in the polariton basis, so the matrix is
// diagonal with entries -i * omega_ab.
inline SparseSuperOp coherent_part(const ModelBasis& basis) {
    const int d = basis.dim();
    SuperOpBuilder b(d);
    for (int a = 0; a < d; ++a)
        for (int q = 0; q < d; ++q) {
            const double w = basis.transition_frequency(a, q);
            if (w != 0.0) b.add_entry(a, q, a, q, Complex(0.0, -w));
        }
    return b.build();
}

namespace detail {

// Sum over sites of the dark-projected site number operators D c_i† c_i D,
// dissipated at rate g. The site sum collapses to a quasimomentum delta:
//   sum_i (A_i)_{ab} conj((A_i)_{cd}) = (1/N) delta_{(b-a) == (d-c) mod N},
//   sum_i A_i† A_i = (N-1)/N * D.
inline void add_dark_site_dissipators(SuperOpBuilder& b, const ModelBasis& basis, double g) {
    if (g == 0.0) return;
    const int n = basis.n();
    const int d = basis.dim();
    for (int da = 1; da < n; ++da)
        for (int db = 1; db < n; ++db)
            for (int dc = 1; dc < n; ++dc) {
                const int dd = ((db + dc - da) % n + n) % n;
                if (dd == 0) continue;
                b.add_entry(1 + da, 1 + db, 1 + dc, 1 + dd, Complex(g / n, 0.0));
            }
    Eigen::MatrixXcd dark_proj = Eigen::MatrixXcd::Zero(d, d);
    for (int dk = 1; dk < n; ++dk) dark_proj(1 + dk, 1 + dk) = 1.0;
    const Complex s(-0.5 * g * (n - 1) / n, 0.0);
    b.add_left(dark_proj, s);
    b.add_right(dark_proj, s);
}

// Terms the dp variant lacks relative to the corrected one: the
// cross-dephasing sandwich terms and, for independent baths, the
// sign-corrected coherence-transfer commutators. In the independent case the
// dp variant retains half of the polariton-polariton sandwich (see
// assemble_generator), so only the other half appears here.
inline void add_correction_terms(SuperOpBuilder& b, const ModelBasis& basis,
                                 const RateSet& r, BathTopology bath) {
    const int n = basis.n();
    const int d = basis.dim();
    const auto sig = [&](int a, int q) { return elementary_op(d, a, q); };
    const auto sig_d = [&](int p, int dk) { return elementary_op(d, p, 1 + dk); };
    const auto d_sig = [&](int dk, int p) { return elementary_op(d, 1 + dk, p); };

    if (bath == BathTopology::Common) {
        b.add_sandwich_pair(sig(0, 0), sig(1, 1), r.gamma_phi / 4.0);
        for (int dk = 1; dk < n; ++dk) {
            b.add_sandwich_pair(sig(0, 0), sig(1 + dk, 1 + dk), r.gamma_phi / 2.0);
            b.add_sandwich_pair(sig(1, 1), sig(1 + dk, 1 + dk), r.gamma_phi / 2.0);
        }
        return;
    }

    b.add_sandwich_pair(sig(0, 0), sig(1, 1), r.gamma_phi / (8.0 * n));
    for (int dk = 1; dk < n; ++dk) {
        b.add_sandwich_pair(sig(0, 0), sig(1 + dk, 1 + dk), r.gamma_phi / (2.0 * n));
        b.add_sandwich_pair(sig(1, 1), sig(1 + dk, 1 + dk), r.gamma_phi / (2.0 * n));
    }
    for (int dk = 1; dk < n; ++dk) {
        const int db = basis.conjugate_dark(dk);
        const Complex sa(-r.Gamma_a / (4.0 * n), 0.0);
        const Complex se(-r.Gamma_e / (4.0 * n), 0.0);
        b.add_commutator_hc(d_sig(db, 1), d_sig(dk, 0), sa);  // -[s_{db,-} rho, s_{d,+}]
        b.add_commutator_hc(sig_d(0, db), sig_d(1, dk), sa);  // -[s_{+,db} rho, s_{-,d}]
        b.add_commutator_hc(d_sig(db, 0), d_sig(dk, 1), se);  // -[s_{db,+} rho, s_{d,-}]
        b.add_commutator_hc(sig_d(1, db), sig_d(0, dk), se);  // -[s_{-,db} rho, s_{+,d}]
    }
}

}  // namespace detail

// Only the corrected-minus-DP terms, as a standalone superoperator. Used to
// check that the oracle-vs-DP difference is supported exactly on them.
inline SparseSuperOp correction_terms(const ModelBasis& basis, const RateSet& r,
                                      BathTopology bath) {
    SuperOpBuilder b(basis.dim());
    detail::add_correction_terms(b, basis, r, bath);
    return b.build();
}

inline Liouvillian assemble_generator(Variant variant, BathTopology bath,
                                      const ModelBasis& basis, const RateSet& r) {
    if (auto err = validate_rates(r))
        throw std::invalid_argument("assemble_generator: " + *err);
    const int n = basis.n();
    const int d = basis.dim();
    SuperOpBuilder b(d);
    const auto sig = [&](int a, int q) { return elementary_op(d, a, q); };

    if (bath == BathTopology::Common) {
        b.add_dissipator(sig(0, 1), r.gamma_a / 4.0);  // |+><-|
        b.add_dissipator(sig(1, 0), r.gamma_e / 4.0);  // |-><+|
        b.add_dissipator(sig(0, 0), r.gamma_phi / 4.0);
        b.add_dissipator(sig(1, 1), r.gamma_phi / 4.0);
        Eigen::MatrixXcd dark_proj = Eigen::MatrixXcd::Zero(d, d);
        for (int dk = 1; dk < n; ++dk) dark_proj(1 + dk, 1 + dk) = 1.0;
        b.add_dissipator(dark_proj, r.gamma_phi);
    } else {
        b.add_dissipator(sig(0, 1), r.gamma_a / (4.0 * n));
        b.add_dissipator(sig(1, 0), r.gamma_e / (4.0 * n));
        for (int dk = 1; dk < n; ++dk) {
            b.add_dissipator(sig(1 + dk, 1), r.Gamma_a / (2.0 * n));  // |d><-|
            b.add_dissipator(sig(0, 1 + dk), r.Gamma_a / (2.0 * n));  // |+><d|
            b.add_dissipator(sig(1 + dk, 0), r.Gamma_e / (2.0 * n));  // |d><+|
            b.add_dissipator(sig(1, 1 + dk), r.Gamma_e / (2.0 * n));  // |-><d|
        }
        b.add_dissipator(sig(0, 0), r.gamma_phi / (4.0 * n));
        b.add_dissipator(sig(1, 1), r.gamma_phi / (4.0 * n));
        detail::add_dark_site_dissipators(b, basis, r.gamma_phi);
        // Both variants carry half of the polariton-polariton sandwich term:
        // the dp coefficient table shows a residual -gamma_phi/8N dephasing of
        // rho_{+-}, not the full -gamma_phi/4N loss of the bare dissipators.
        b.add_sandwich_pair(sig(0, 0), sig(1, 1), r.gamma_phi / (8.0 * n));
    }

    if (variant == Variant::Corrected)
        detail::add_correction_terms(b, basis, r, bath);

    Liouvillian L;
    L.variant = variant;
    L.bath = bath;
    L.source = GeneratorSource::ClosedForm;
    L.n = n;
    L.op_dim = d;
    L.rates = r;
    L.coherent = coherent_part(basis);
    L.dissipative = b.build();
    return L;
}

}  // namespace vibpol
