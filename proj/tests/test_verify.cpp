#include "vibpol/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace vibpol;
using vibpol::test::random_rates;

TEST_CASE("eom_row: corrected/common rho_{+-} has a single self entry") {
    ModelBasis basis = build_basis({4, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.2, 0.4};
    Liouvillian L = assemble_generator(Variant::Corrected, BathTopology::Common, basis, r);
    EomRow row = eom_row(L, 0, 1);
    REQUIRE(row.coefficients.size() == 1);
    CHECK(std::abs(row.coefficients.at({0, 1}) -
                   Complex(-(r.gamma_e + r.gamma_a) / 8.0)) < 1e-14);
}

TEST_CASE("eom_row: corrected/independent rho_{+d} self and transfer entries") {
    const int n = 4;
    const double fn = n;
    ModelBasis basis = build_basis({n, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.2, 0.4};
    Liouvillian L = assemble_generator(Variant::Corrected, BathTopology::Independent, basis, r);
    for (int dk = 1; dk < n; ++dk) {
        EomRow row = eom_row(L, 0, 1 + dk);
        REQUIRE(row.coefficients.size() == 2);
        const double self = -(r.gamma_e / (8 * fn) + r.Gamma_e * (fn - 1) / (4 * fn) +
                              r.Gamma_a / (4 * fn) + r.Gamma_e / (4 * fn) +
                              r.gamma_phi * (fn - 2) / (2 * fn) + r.gamma_phi / (8 * fn));
        CHECK(std::abs(row.coefficients.at({0, 1 + dk}) - Complex(self)) < 1e-13);
        const int dbar = basis.conjugate_dark(dk);
        CHECK(std::abs(row.coefficients.at({1 + dbar, 1}) - Complex(-r.Gamma_a / (2 * fn))) <
              1e-13);
        CHECK(classify_entry(row.target, {1 + dbar, 1}) == EntryClass::CoherenceTransfer);
    }
}

TEST_CASE("eom_row: common-bath dark populations are frozen") {
    ModelBasis basis = build_basis({4, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.2, 0.4};
    for (Variant v : {Variant::Corrected, Variant::Dp}) {
        Liouvillian L = assemble_generator(v, BathTopology::Common, basis, r);
        for (int dk = 1; dk < 4; ++dk)
            CHECK(eom_row(L, 1 + dk, 1 + dk).coefficients.empty());
    }
}

TEST_CASE("entry classification is consistent across the whole generator") {
    ModelBasis basis = build_basis({4, 1.0, 0.2});
    std::mt19937 rng(3);
    RateSet r = random_rates(rng);
    for (Variant v : {Variant::Corrected, Variant::Dp})
        for (BathTopology b : {BathTopology::Common, BathTopology::Independent}) {
            Liouvillian L = assemble_generator(v, b, basis, r);
            for (int a = 0; a < basis.dim(); ++a)
                for (int q = 0; q < basis.dim(); ++q) {
                    EomRow row = eom_row(L, a, q);
                    for (const auto& [src, val] : row.coefficients) {
                        if (a == q)
                            CHECK(classify_entry(row.target, src) != EntryClass::CoherenceTransfer);
                        else
                            CHECK(src.first != src.second);
                    }
                }
        }
}

TEST_CASE("coefficient-table regression at several N and random rates") {
    std::mt19937 rng(71);
    for (int n : {3, 4, 6, 8}) {
        ModelBasis basis = build_basis({n, 1.0, 0.2});
        for (int trial = 0; trial < 3; ++trial) {
            Table1Report report = table1_report(basis, random_rates(rng));
            INFO("N = " << n << ", trial " << trial);
            CHECK(report.max_abs_diff() <= 1e-10);
        }
    }
    // N = 2 has no distinct dark pair; the report must still pass
    ModelBasis b2 = build_basis({2, 1.0, 0.2});
    CHECK(table1_report(b2, random_rates(rng)).all_pass());
}

TEST_CASE("symmetry rule: rho_{-d} row equals swapped rho_{+d} row") {
    const int n = 5;
    ModelBasis basis = build_basis({n, 1.0, 0.2});
    std::mt19937 rng(73);
    RateSet r = random_rates(rng);
    RateSet rs = r;
    std::swap(rs.gamma_a, rs.gamma_e);
    std::swap(rs.Gamma_a, rs.Gamma_e);
    for (BathTopology b : {BathTopology::Common, BathTopology::Independent}) {
        Liouvillian direct = assemble_generator(Variant::Corrected, b, basis, r);
        Liouvillian swapped = assemble_generator(Variant::Corrected, b, basis, rs);
        for (int dk = 1; dk < n; ++dk) {
            auto minus_row = eom_row(direct, 1, 1 + dk).coefficients;
            auto plus_row = eom_row(swapped, 0, 1 + dk).coefficients;
            // swap +/- labels in the plus row and compare
            CoeffMap mapped;
            for (const auto& [src, v] : plus_row) {
                auto flip = [](int s) { return s < 2 ? 1 - s : s; };
                mapped[{flip(src.first), flip(src.second)}] = v;
            }
            for (const auto& [k, v] : mapped)
                CHECK(std::abs(v - minus_row.at(k)) < 1e-12);
            CHECK(mapped.size() == minus_row.size());
        }
    }
}

TEST_CASE("conjugate rows: d/dt rho_{d,pm} matches the conjugated rho_{pm,d} row") {
    const int n = 4;
    ModelBasis basis = build_basis({n, 1.0, 0.2});
    std::mt19937 rng(79);
    RateSet r = random_rates(rng);
    Liouvillian L = assemble_generator(Variant::Corrected, BathTopology::Independent, basis, r);
    for (int dk = 1; dk < n; ++dk) {
        auto fwd = eom_row(L, 0, 1 + dk).coefficients;
        auto bwd = eom_row(L, 1 + dk, 0).coefficients;
        REQUIRE(fwd.size() == bwd.size());
        for (const auto& [src, v] : fwd) {
            auto it = bwd.find({src.second, src.first});
            REQUIRE(it != bwd.end());
            CHECK(std::abs(std::conj(v) - it->second) < 1e-13);
        }
    }
}

TEST_CASE("pure-dephasing derivative of the rho_{+-} self-coefficient") {
    const int n = 4;
    ModelBasis basis = build_basis({n, 1.0, 0.2});
    RateSet base{0.3, 0.5, 0.4, 0.2, 0.6};
    auto self_coeff = [&](Variant v, BathTopology b, double gphi) {
        RateSet r = base;
        r.gamma_phi = gphi;
        Liouvillian L = assemble_generator(v, b, basis, r);
        return eom_row(L, 0, 1).coefficients.at({0, 1}).real();
    };
    const double h = 1e-4 * base.gamma_phi;
    auto deriv = [&](Variant v, BathTopology b) {
        return (self_coeff(v, b, base.gamma_phi + h) - self_coeff(v, b, base.gamma_phi - h)) /
               (2.0 * h);
    };
    CHECK(std::abs(deriv(Variant::Corrected, BathTopology::Common)) < 1e-9);
    CHECK(std::abs(deriv(Variant::Corrected, BathTopology::Independent)) < 1e-9);
    CHECK(std::abs(deriv(Variant::Dp, BathTopology::Common) + 0.25) < 1e-10);
    CHECK(std::abs(deriv(Variant::Dp, BathTopology::Independent) + 1.0 / (8.0 * n)) < 1e-10);
}

TEST_CASE("quasimomentum identity values at N=4 and N=2") {
    ModelBasis b4 = build_basis({4, 1.0, 0.2});
    CHECK(quasimomentum_identity(b4) <= 1e-12);
    // explicit spot values
    auto term = [&](const ModelBasis& basis, int d1, int d2) {
        Complex s(0.0, 0.0);
        for (int i = 1; i <= basis.n(); ++i)
            s += basis.overlap(i, 0) * std::conj(basis.overlap(i, 1 + d1)) *
                 basis.overlap(i, 1) * std::conj(basis.overlap(i, 1 + d2));
        return s;
    };
    CHECK(std::abs(term(b4, 1, 3) - Complex(-0.125)) < 1e-14);
    CHECK(std::abs(term(b4, 1, 2)) < 1e-14);
    ModelBasis b2 = build_basis({2, 1.0, 0.2});
    CHECK(std::abs(term(b2, 1, 1) - Complex(-0.25)) < 1e-14);
}

TEST_CASE("compare_generators: identity and dp difference entries") {
    ModelBasis basis = build_basis({3, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.2, 0.4};
    Liouvillian L = assemble_generator(Variant::Corrected, BathTopology::Common, basis, r);
    CHECK(compare_generators(L, L).max_abs == 0.0);

    Liouvillian dp = assemble_generator(Variant::Dp, BathTopology::Common, basis, r);
    GeneratorComparison cmp = compare_generators(L, dp);
    bool found = false;
    for (const auto& e : cmp.entries)
        if (e.target == StatePair{0, 1} && e.source == StatePair{0, 1} &&
            std::abs(e.difference - Complex(r.gamma_phi / 4.0)) < 1e-13)
            found = true;
    CHECK(found);  // the sandwich term that cancels the spurious dephasing

    ModelBasis b4 = build_basis({4, 1.0, 0.2});
    Liouvillian other = assemble_generator(Variant::Corrected, BathTopology::Common, b4, r);
    CHECK_THROWS_AS(compare_generators(L, other), std::invalid_argument);
}

TEST_CASE("kossakowski check: zero dephasing and independent baths") {
    ModelBasis basis = build_basis({4, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.0, 0.2, 0.4};
    Liouvillian L = assemble_generator(Variant::Corrected, BathTopology::Common, basis, r);
    KossakowskiResult k = kossakowski_check(L);
    CHECK(k.matrix.cwiseAbs().maxCoeff() == 0.0);

    r.gamma_phi = 0.6;
    for (BathTopology b : {BathTopology::Common, BathTopology::Independent}) {
        Liouvillian lc = assemble_generator(Variant::Corrected, b, basis, r);
        CHECK(kossakowski_check(lc).min_eigenvalue >= -1e-12);
    }
}

TEST_CASE("independent-bath dark coherence row: quasimomentum-conserving transfer") {
    const int n = 5;
    const double fn = n;
    ModelBasis basis = build_basis({n, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.2, 0.4};
    for (Variant v : {Variant::Corrected, Variant::Dp}) {
        Liouvillian L = assemble_generator(v, BathTopology::Independent, basis, r);
        auto row = eom_row(L, 1 + 1, 1 + 3).coefficients;  // rho_{d1 d3}
        const double self =
            -(r.Gamma_a / (2 * fn) + r.Gamma_e / (2 * fn) + r.gamma_phi * (fn - 2) / fn);
        CHECK(std::abs(row.at({2, 4}) - Complex(self)) < 1e-13);
        for (int dk = 1; dk < n; ++dk)
            for (int dj = 1; dj < n; ++dj) {
                if (dk == 1 && dj == 3) continue;
                auto it = row.find({1 + dk, 1 + dj});
                if (((dk - dj) - (1 - 3)) % n == 0) {
                    REQUIRE(it != row.end());
                    CHECK(std::abs(it->second - Complex(r.gamma_phi / fn)) < 1e-13);
                } else {
                    CHECK(it == row.end());
                }
            }
    }
}
