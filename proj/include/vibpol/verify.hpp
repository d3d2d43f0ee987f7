// verify.hpp — machine-readable equation-of-motion rows, the encoded
// analytic coefficient table, generator comparison, and the appendix
// identities (quasimomentum sum, dephasing-sector Kossakowski matrix).

#pragma once

#include "vibpol/generators.hpp"
#include "vibpol/model.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vibpol {

using StatePair = std::pair<int, int>;
using CoeffMap = std::map<StatePair, Complex>;

enum class EntryClass { SelfDecay, PopulationTransfer, CoherenceTransfer };

inline EntryClass classify_entry(const StatePair& target, const StatePair& source) {
    if (source == target) return EntryClass::SelfDecay;
    if (target.first == target.second && source.first == source.second)
        return EntryClass::PopulationTransfer;
    return EntryClass::CoherenceTransfer;
}

struct EomRow {
    StatePair target;
    CoeffMap coefficients;
};

// Coefficients of d/dt rho_(a,b) in terms of rho_(c,e), read off the
// dissipative matrix (interaction picture: coherent part excluded).
inline EomRow eom_row(const Liouvillian& L, int a, int b, double prune = 1e-14) {
    EomRow row;
    row.target = {a, b};
    const int d = L.op_dim;
    const int r = a * d + b;
    for (SparseSuperOp::InnerIterator it(L.dissipative, r); it; ++it) {
        if (std::abs(it.value()) <= prune) continue;
        row.coefficients[{int(it.col()) / d, int(it.col()) % d}] = it.value();
    }
    return row;
}

// ---------------------------------------------------------------------------
// Analytic coefficient table (single source of truth for the regression).
// All expressions are real in this phase convention.

namespace detail {

// Swap rule for the lower-polariton partner rows: + <-> - together with
// gamma_a <-> gamma_e and Gamma_a <-> Gamma_e.
inline RateSet swapped(const RateSet& r) {
    RateSet s = r;
    std::swap(s.gamma_a, s.gamma_e);
    std::swap(s.Gamma_a, s.Gamma_e);
    return s;
}

}  // namespace detail

// Analytic d/dt rho_(a,b) for every row class of the coefficient table.
// Indices follow the canonical order: 0 = |+>, 1 = |->, 1+d = |Dark(d)>.
inline CoeffMap analytic_eom_row(Variant variant, BathTopology bath,
                                 const ModelBasis& basis, const RateSet& rates,
                                 int a, int b) {
    const int n = basis.n();
    const double fn = double(n);
    CoeffMap out;
    const bool corrected = variant == Variant::Corrected;

    const bool a_pol = a < 2, b_pol = b < 2;
    if (a_pol && b_pol && a == b) {  // polariton population
        const int upper = a, lower = 1 - a;
        const RateSet r = a == 0 ? rates : detail::swapped(rates);
        if (bath == BathTopology::Common) {
            out[{upper, upper}] = -r.gamma_e / 4.0;
            out[{lower, lower}] = r.gamma_a / 4.0;
        } else {
            out[{upper, upper}] = -r.gamma_e / (4.0 * fn) - r.Gamma_e * (fn - 1.0) / (2.0 * fn);
            out[{lower, lower}] = r.gamma_a / (4.0 * fn);
            for (int dk = 1; dk < n; ++dk) out[{1 + dk, 1 + dk}] = r.Gamma_a / (2.0 * fn);
        }
        return out;
    }
    if (!a_pol && !b_pol && a == b) {  // dark population
        if (bath == BathTopology::Common) return out;  // frozen
        out[{0, 0}] = rates.Gamma_e / (2.0 * fn);
        out[{1, 1}] = rates.Gamma_a / (2.0 * fn);
        out[{a, a}] = -(rates.Gamma_a + rates.Gamma_e) / (2.0 * fn)
                      - rates.gamma_phi * (fn - 2.0) / fn;
        for (int dk = 1; dk < n; ++dk)
            if (1 + dk != a) out[{1 + dk, 1 + dk}] = rates.gamma_phi / fn;
        return out;
    }
    if (a_pol && b_pol) {  // rho_{+-} / rho_{-+}
        double self;
        if (bath == BathTopology::Common) {
            self = -(rates.gamma_a + rates.gamma_e) / 8.0;
            if (!corrected) self -= rates.gamma_phi / 4.0;
        } else {
            self = -(rates.gamma_a + rates.gamma_e) / (8.0 * fn)
                   - (rates.Gamma_a + rates.Gamma_e) * (fn - 1.0) / (4.0 * fn);
            if (!corrected) self -= rates.gamma_phi / (8.0 * fn);
        }
        out[{a, b}] = self;
        return out;
    }
    if (!a_pol && !b_pol) {  // dark-dark coherence, d1 != d2
        if (bath == BathTopology::Common) return out;
        const int d1 = a - 1, d2 = b - 1;
        out[{a, b}] = -(rates.Gamma_a + rates.Gamma_e) / (2.0 * fn)
                      - rates.gamma_phi * (fn - 2.0) / fn;
        for (int dk = 1; dk < n; ++dk)
            for (int dj = 1; dj < n; ++dj) {
                if (dk == d1 && dj == d2) continue;
                if (((dk - dj) - (d1 - d2)) % n == 0)
                    out[{1 + dk, 1 + dj}] = rates.gamma_phi / fn;
            }
        return out;
    }

    // polariton-dark coherence; handle rho_{d,pm} as the conjugate row of
    // rho_{pm,d} (coefficients are real, partners transpose).
    const bool conjugate_row = !a_pol;
    const int pol = conjugate_row ? b : a;
    const int dk = (conjugate_row ? a : b) - 1;
    const RateSet r = pol == 0 ? rates : detail::swapped(rates);
    const int dbar = basis.conjugate_dark(dk);
    double self;
    StatePair partner;  // coherence-transfer partner of rho_{+d}: rho_{dbar,-}
    if (bath == BathTopology::Common) {
        self = corrected ? -(r.gamma_e / 8.0 + r.gamma_phi / 8.0)
                         : -(r.gamma_e / 8.0 + 5.0 * r.gamma_phi / 8.0);
    } else {
        const double t1 = r.gamma_e / (8.0 * fn) + r.Gamma_e * (fn - 1.0) / (4.0 * fn)
                          + r.Gamma_a / (4.0 * fn) + r.Gamma_e / (4.0 * fn);
        self = corrected
                   ? -(t1 + r.gamma_phi * (fn - 2.0) / (2.0 * fn) + r.gamma_phi / (8.0 * fn))
                   : -(t1 + r.gamma_phi * (fn - 1.0) / (2.0 * fn) + r.gamma_phi / (8.0 * fn));
    }
    partner = {1 + dbar, 1 - pol};
    if (conjugate_row) partner = {partner.second, partner.first};
    out[{a, b}] = self;
    if (corrected && bath == BathTopology::Independent)
        out[partner] = -r.Gamma_a / (2.0 * fn);
    return out;
}

struct Table1Cell {
    std::string row_name;
    Variant variant;
    BathTopology bath;
    StatePair target;
    CoeffMap extracted;
    CoeffMap analytic;
    double max_abs_diff = 0.0;
};

struct Table1Report {
    int n = 0;
    RateSet rates;
    std::vector<Table1Cell> cells;

    double max_abs_diff() const {
        double m = 0.0;
        for (const auto& c : cells) m = std::max(m, c.max_abs_diff);
        return m;
    }
    bool all_pass(double tol = 1e-10) const { return max_abs_diff() <= tol; }
};

namespace detail {

inline double coeff_map_diff(const CoeffMap& x, const CoeffMap& y) {
    double m = 0.0;
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        m = std::max(m, std::abs(v - (it == y.end() ? Complex(0.0) : it->second)));
    }
    for (const auto& [k, v] : y)
        if (!x.count(k)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace detail

inline Table1Report table1_report(const ModelBasis& basis, const RateSet& rates) {
    const int n = basis.n();
    Table1Report report;
    report.n = n;
    report.rates = rates;

    std::vector<std::pair<std::string, StatePair>> rows;
    rows.push_back({"rho_{+-}", {0, 1}});
    rows.push_back({"rho_{-+}", {1, 0}});
    for (int dk = 1; dk < n; ++dk) {
        rows.push_back({"rho_{+d" + std::to_string(dk) + "}", {0, 1 + dk}});
        rows.push_back({"rho_{-d" + std::to_string(dk) + "}", {1, 1 + dk}});
        rows.push_back({"rho_{d" + std::to_string(dk) + "+}", {1 + dk, 0}});
    }
    for (int d1 = 1; d1 < n; ++d1)
        for (int d2 = 1; d2 < n; ++d2)
            if (d1 != d2)
                rows.push_back({"rho_{d" + std::to_string(d1) + "d" + std::to_string(d2) + "}",
                                {1 + d1, 1 + d2}});
    rows.push_back({"rho_{++}", {0, 0}});
    rows.push_back({"rho_{--}", {1, 1}});
    for (int dk = 1; dk < n; ++dk)
        rows.push_back({"rho_{d" + std::to_string(dk) + "d" + std::to_string(dk) + "}",
                        {1 + dk, 1 + dk}});

    for (Variant variant : {Variant::Dp, Variant::Corrected})
        for (BathTopology bath : {BathTopology::Common, BathTopology::Independent}) {
            const Liouvillian L = assemble_generator(variant, bath, basis, rates);
            for (const auto& [name, target] : rows) {
                Table1Cell cell;
                cell.row_name = name;
                cell.variant = variant;
                cell.bath = bath;
                cell.target = target;
                cell.extracted = eom_row(L, target.first, target.second).coefficients;
                cell.analytic =
                    analytic_eom_row(variant, bath, basis, rates, target.first, target.second);
                cell.max_abs_diff = detail::coeff_map_diff(cell.extracted, cell.analytic);
                report.cells.push_back(std::move(cell));
            }
        }
    return report;
}

struct GeneratorDiffEntry {
    StatePair target;
    StatePair source;
    Complex difference;
};

struct GeneratorComparison {
    double max_abs = 0.0;
    std::vector<GeneratorDiffEntry> entries;  // |diff| > threshold
};

inline GeneratorComparison compare_generators(const Liouvillian& l1, const Liouvillian& l2,
                                              double threshold = 1e-12) {
    if (l1.op_dim != l2.op_dim)
        throw std::invalid_argument("compare_generators: dimension mismatch");
    const int d = l1.op_dim;
    SparseSuperOp diff = l1.dissipative - l2.dissipative;
    GeneratorComparison out;
    for (int r = 0; r < diff.outerSize(); ++r)
        for (SparseSuperOp::InnerIterator it(diff, r); it; ++it) {
            const double mag = std::abs(it.value());
            out.max_abs = std::max(out.max_abs, mag);
            if (mag > threshold)
                out.entries.push_back({{int(it.row()) / d, int(it.row()) % d},
                                       {int(it.col()) / d, int(it.col()) % d},
                                       it.value()});
        }
    return out;
}

// Max deviation of sum_i u_{i pm} u_{d1 i} u_{i mp} u_{d2 i} from
// -(1/2N) delta_{d2, N-d1} over all dark pairs and both polariton orderings.
inline double quasimomentum_identity(const ModelBasis& basis) {
    const int n = basis.n();
    double worst = 0.0;
    for (int d1 = 1; d1 < n; ++d1)
        for (int d2 = 1; d2 < n; ++d2) {
            const double expected = (d1 + d2) % n == 0 ? -1.0 / (2.0 * n) : 0.0;
            for (int first : {0, 1}) {
                Complex sum(0.0, 0.0);
                for (int i = 1; i <= n; ++i)
                    sum += basis.overlap(i, first) * std::conj(basis.overlap(i, 1 + d1)) *
                           basis.overlap(i, 1 - first) * std::conj(basis.overlap(i, 1 + d2));
                worst = std::max(worst, std::abs(sum - Complex(expected, 0.0)));
            }
        }
    return worst;
}

struct KossakowskiResult {
    std::vector<StatePair> ops;  // zero-frequency operator pairs |a><b|
    Eigen::MatrixXcd matrix;     // coefficient matrix over ops
    double min_eigenvalue = 0.0;
    double second_largest_eigenvalue = 0.0;
};

// Coefficient matrix of the gamma_phi sector over the zero-frequency operator
// set {sigma_{++}, sigma_{--}, sigma_{dd'}}, ordered with the projectors
// first. Assembled from the generator's dephasing term structure.
inline KossakowskiResult kossakowski_check(const Liouvillian& L) {
    const int n = L.n;
    const double g = L.rates.gamma_phi;
    const bool corrected = L.variant == Variant::Corrected;

    KossakowskiResult out;
    out.ops.push_back({0, 0});
    out.ops.push_back({1, 1});
    for (int dk = 1; dk < n; ++dk) out.ops.push_back({1 + dk, 1 + dk});
    for (int d1 = 1; d1 < n; ++d1)
        for (int d2 = 1; d2 < n; ++d2)
            if (d1 != d2) out.ops.push_back({1 + d1, 1 + d2});
    const int m = int(out.ops.size());
    std::map<StatePair, int> at;
    for (int k = 0; k < m; ++k) at[out.ops[k]] = k;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);

    if (L.bath == BathTopology::Common) {
        c(0, 0) = g / 4.0;
        c(1, 1) = g / 4.0;
        for (int d1 = 1; d1 < n; ++d1)
            for (int d2 = 1; d2 < n; ++d2)
                c(at[{1 + d1, 1 + d1}], at[{1 + d2, 1 + d2}]) += g;  // L_D expands to all-ones
        if (corrected) {
            c(0, 1) = c(1, 0) = g / 4.0;
            for (int dk = 1; dk < n; ++dk) {
                const int kd = at[{1 + dk, 1 + dk}];
                c(0, kd) = c(kd, 0) = g / 2.0;
                c(1, kd) = c(kd, 1) = g / 2.0;
            }
        }
    } else {
        c(0, 0) = g / (4.0 * n);
        c(1, 1) = g / (4.0 * n);
        // site-number dissipator sum: (g/N) delta_{(d2-d1) == (e2-e1) mod N}
        for (int ka = 0; ka < m; ++ka)
            for (int kb = 0; kb < m; ++kb) {
                const auto& [a1, a2] = out.ops[ka];
                const auto& [b1, b2] = out.ops[kb];
                if (a1 < 2 || b1 < 2) continue;
                if (((a2 - a1) - (b2 - b1)) % n == 0) c(ka, kb) += g / double(n);
            }
        if (corrected) {
            c(0, 1) = c(1, 0) = g / (4.0 * n);
            for (int dk = 1; dk < n; ++dk) {
                const int kd = at[{1 + dk, 1 + dk}];
                c(0, kd) = c(kd, 0) = g / (2.0 * n);
                c(1, kd) = c(kd, 1) = g / (2.0 * n);
            }
        }
    }

    out.matrix = c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    Eigen::VectorXd ev = es.eigenvalues();
    out.second_largest_eigenvalue = ev.size() >= 2 ? ev(ev.size() - 2) : 0.0;
    return out;
}

}  // namespace vibpol
