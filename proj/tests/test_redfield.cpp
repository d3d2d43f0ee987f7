#include "vibpol/redfield.hpp"
#include "vibpol/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace vibpol;
using vibpol::test::random_rates;

namespace {

bool has_combo(const std::vector<SecularCombo>& combos, int p, int q, int r, int s) {
    return std::any_of(combos.begin(), combos.end(), [&](const SecularCombo& c) {
        return c.p == p && c.q == q && c.r == r && c.s == s;
    });
}

}  // namespace

TEST_CASE("secular enumeration includes the omitted families") {
    ModelBasis b2 = build_basis({2, 1.0, 0.2});
    auto combos2 = enumerate_secular(b2);
    // (+, d1, -, d1): omega_{+d} = omega_{d-} = 1 tick
    CHECK(has_combo(combos2, 0, 2, 1, 2));
    // (+, +, -, -): both ticks 0
    CHECK(has_combo(combos2, 0, 0, 1, 1));

    ModelBasis b3 = build_basis({3, 1.0, 0.2});
    auto combos3 = enumerate_secular(b3);
    // {+, +, d1, d2}: the omitted polariton/dark zero-frequency family
    CHECK(has_combo(combos3, 0, 0, 2, 3));
    CHECK_FALSE(has_combo(combos3, 0, 1, 0, 1));  // tick_pq = +2 vs tick_sr = -2

    for (const auto& c : combos3)
        CHECK(b3.transition_ticks(c.p, c.q) == b3.transition_ticks(c.s, c.r));
}

TEST_CASE("combo weights reproduce the overlap case analysis") {
    const int n = 4;
    ModelBasis basis = build_basis({n, 1.0, 0.2});

    SecularCombo pol{0, 0, 1, 1, 0};  // {+,+,-,-}
    CHECK(std::abs(combo_weight(pol, basis, BathTopology::Common) - Complex(0.25)) < 1e-14);
    CHECK(std::abs(combo_weight(pol, basis, BathTopology::Independent) -
                   Complex(1.0 / (4.0 * n))) < 1e-14);

    // {+, d1, -, d2}: zero for common bath, quasimomentum delta for independent
    for (int d1 = 1; d1 < n; ++d1)
        for (int d2 = 1; d2 < n; ++d2) {
            SecularCombo c{0, 1 + d1, 1, 1 + d2, 1};
            CHECK(std::abs(combo_weight(c, basis, BathTopology::Common)) < 1e-14);
            const double expect = (d1 + d2) % n == 0 ? -1.0 / (2.0 * n) : 0.0;
            CHECK(std::abs(combo_weight(c, basis, BathTopology::Independent) -
                           Complex(expect)) < 1e-13);
        }
}

TEST_CASE("common-bath weights factorize into two single-index sums") {
    ModelBasis basis = build_basis({5, 1.0, 0.2});
    for (const auto& c : enumerate_secular(basis)) {
        Complex pq(0.0, 0.0), rs(0.0, 0.0);
        for (int i = 1; i <= basis.n(); ++i) {
            pq += basis.overlap(i, c.p) * std::conj(basis.overlap(i, c.q));
            rs += basis.overlap(i, c.r) * std::conj(basis.overlap(i, c.s));
        }
        CHECK(std::abs(combo_weight(c, basis, BathTopology::Common) - pq * rs) < 1e-14);
    }
}

TEST_CASE("zero rates give the zero oracle") {
    ModelBasis basis = build_basis({3, 1.0, 0.2});
    Liouvillian L = assemble_redfield(basis, RateSet{}, BathTopology::Independent);
    CHECK(Eigen::MatrixXcd(L.dissipative).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("oracle equals the corrected closed-form generator") {
    std::mt19937 rng(101);
    for (int n : {2, 3, 4, 6}) {
        ModelBasis basis = build_basis({n, 1.0, 0.2});
        for (int trial = 0; trial < 3; ++trial) {
            RateSet r = trial == 0 && n == 2 ? RateSet{1, 1, 1, 1, 1} : random_rates(rng);
            for (BathTopology bath : {BathTopology::Common, BathTopology::Independent}) {
                Liouvillian oracle = assemble_redfield(basis, r, bath);
                Liouvillian closed =
                    assemble_generator(Variant::Corrected, bath, basis, r);
                CHECK(compare_generators(oracle, closed).max_abs <= 1e-10);
            }
        }
    }
}

TEST_CASE("oracle minus dp is supported exactly on the correction terms") {
    std::mt19937 rng(103);
    for (int n : {2, 3, 4, 6}) {
        ModelBasis basis = build_basis({n, 1.0, 0.2});
        RateSet r = random_rates(rng);
        for (BathTopology bath : {BathTopology::Common, BathTopology::Independent}) {
            Liouvillian oracle = assemble_redfield(basis, r, bath);
            Liouvillian dp = assemble_generator(Variant::Dp, bath, basis, r);
            Eigen::MatrixXcd diff =
                Eigen::MatrixXcd(oracle.dissipative) - Eigen::MatrixXcd(dp.dissipative);
            Eigen::MatrixXcd extra = Eigen::MatrixXcd(correction_terms(basis, r, bath));
            // off-support entries vanish
            for (int row = 0; row < diff.rows(); ++row)
                for (int col = 0; col < diff.cols(); ++col)
                    if (std::abs(extra(row, col)) < 1e-15)
                        CHECK(std::abs(diff(row, col)) < 1e-12);
            // and on-support entries match the correction terms themselves
            CHECK((diff - extra).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("oracle N=4 independent: coherence-transfer coefficient") {
    ModelBasis basis = build_basis({4, 1.0, 0.2});
    RateSet r{0.3, 0.5, 0.7, 0.8, 0.2};
    Liouvillian L = assemble_redfield(basis, r, BathTopology::Independent);
    auto row = eom_row(L, 0, 1 + 1).coefficients;  // rho_{+,d1}
    auto it = row.find({1 + 3, 1});                // rho_{d3,-}
    REQUIRE(it != row.end());
    CHECK(std::abs(it->second - Complex(-r.Gamma_a / 8.0)) < 1e-13);
}
