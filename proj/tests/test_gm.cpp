#include <doctest.h>

#include <cmath>
#include <random>

#include "maxstop/error.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/roots.hpp"
#include "maxstop/strategy.hpp"

using namespace maxstop;

TEST_CASE("indifference numbers") {
    const std::pair<int, double> table[] = {{2, 0.5},         {3, 0.68989795}, {4, 0.77584507},
                                            {5, 0.82458958},  {50, 0.98377581}, {98, 0.99175674},
                                            {99, 0.99184036}, {100, 0.99192231}};
    CHECK(gm::indifference_number(1) == 0.0);
    CHECK(gm::indifference_number(2) == 0.5);
    for (auto [i, k] : table) {
        CAPTURE(i);
        CHECK(std::abs(gm::indifference_number(i) - k) <= 5e-9);
    }
    // Three rounds left: 2x + x^2/2 = 1 gives k = 1/(1 + x) = (1 + sqrt 6)/5.
    CHECK(std::abs(gm::indifference_number(3) - (1.0 + std::sqrt(6.0)) / 5.0) <= 1e-12);
}

TEST_CASE("indifference table is strictly increasing in [0,1)") {
    const auto t = gm::indifference_table(1000);
    REQUIRE(t.values.size() == 1000);
    CHECK(t.values[0] == 0.0);
    CHECK(t.values[1] == 0.5);
    for (std::size_t i = 1; i < t.values.size(); ++i) {
        REQUIRE(t.values[i] > t.values[i - 1]);
        REQUIRE(t.values[i] < 1.0);
    }
}

TEST_CASE("indifference residual by an independent route") {
    // sum_j C(m,j) k^(m-j) (1-k)^j / j - k^m with log-gamma binomials.
    const auto residual = [](int m, double k) {
        double lhs = 0.0;
        for (int j = 1; j <= m; ++j) {
            const double lc = std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
            lhs += std::exp(lc + (m - j) * std::log(k) + j * std::log1p(-k)) / j;
        }
        return lhs - std::pow(k, m);
    };
    for (int i = 2; i <= 1000; i += (i < 50 ? 1 : 7)) {
        const double k = gm::indifference_number(i);
        CAPTURE(i);
        REQUIRE(std::abs(residual(i - 1, k)) <= 1e-10);
        REQUIRE(std::abs(gm::indifference_residual(i, k)) <= 1e-10);
    }
}

TEST_CASE("cutoff generators") {
    CHECK(gm::gm_cutoffs(1) == CutoffVector({0.0}));
    const auto g3 = gm::gm_cutoffs(3);
    CHECK(std::abs(g3.at_round(1) - 0.68989795) <= 5e-9);
    CHECK(g3.at_round(2) == 0.5);
    CHECK(g3.at_round(3) == 0.0);
    const auto g5 = gm::gm_cutoffs(5);
    const double want[] = {0.82458958, 0.77584507, 0.68989795, 0.5, 0.0};
    for (int r = 1; r <= 5; ++r) CHECK(std::abs(g5.at_round(r) - want[r - 1]) <= 5e-9);
    const auto g100 = gm::gm_cutoffs(100);
    for (int r = 1; r < 99; ++r) REQUIRE(g100.at_round(r) > g100.at_round(r + 1));

    CHECK(gm::naive_cutoffs(2) == CutoffVector({0.5, 0.0}));
    const auto n3 = gm::naive_cutoffs(3);
    CHECK(std::abs(n3.at_round(1) - 2.0 / 3.0) <= 1e-15);
    CHECK(n3.at_round(2) == 0.5);
}

TEST_CASE("classical totals") {
    const std::pair<int, double> table[] = {{1, 1.0},        {2, 0.75},       {3, 0.684293},
                                            {4, 0.655396},   {5, 0.639194},   {10, 0.608699},
                                            {50, 0.585725},  {98, 0.582993},  {99, 0.582964},
                                            {100, 0.582936}};
    for (auto [n, p] : table) {
        CAPTURE(n);
        CHECK(std::abs(gm::total_win_probability(gm::gm_cutoffs(n)) - p) <= 5e-7);
    }
    CHECK(std::abs(gm::round_win_probability(gm::gm_cutoffs(3), 1) - 0.2239) <= 5e-5);
}

TEST_CASE("classical and exact agree for n = 2 only") {
    for (double k1 = 0.0; k1 <= 1.0; k1 += 0.05) {
        const CutoffVector k({k1, 0.0});
        const auto p = gm::round_win_probabilities(k);
        const auto t = outcome_table(k);
        CHECK(std::abs(p[0] - t.round(1).pw) <= 1e-15);
        CHECK(std::abs(p[1] - t.round(2).pw) <= 1e-15);
        CHECK(std::abs(gm::total_win_probability(k) - (0.5 + k1 - k1 * k1)) <= 1e-15);
    }
    const auto g3 = gm::gm_cutoffs(3);
    CHECK(std::abs(gm::total_win_probability(g3) - 0.684293) <= 5e-7);
    CHECK(std::abs(total_win_probability(g3) - 0.677560) <= 5e-7);
}

TEST_CASE("classical formula rejects non-monotone input") {
    const CutoffVector k({0.3, 0.5, 0.0}, Monotonicity::permissive);
    CHECK_THROWS_AS((void)gm::round_win_probability(k, 1), InvalidInput);
    CHECK_THROWS_AS((void)gm::round_win_probability(gm::gm_cutoffs(3), 4), InvalidInput);
}

TEST_CASE("Poisson asymptote") {
    CHECK(gm::single_k_limit_series(0.0).value == 0.0);
    const auto a = gm::single_k_asymptote();
    CHECK(std::abs(a.mu - 1.503) <= 1e-3);
    CHECK(std::abs(a.value - 0.51735) <= 1e-5);
    CHECK(a.series.last_term < 1e-16 * a.series.value);
    CHECK(a.series.terms > 5);

    const auto m = maximize_scalar([](double mu) { return gm::single_k_limit_series(mu).value; }, 0.5, 5.0);
    CHECK(std::abs(m.x - a.mu) <= 1e-6);
    CHECK(std::abs(m.fx - a.value) <= 1e-12);

    // Finite-n single-k optima approach the limit from above.
    const auto big = optimal_single_k(10000);
    CHECK(std::abs(big.pw - 0.517396) <= 5e-7);
    CHECK(big.pw > a.value);
}

TEST_CASE("single k then zero") {
    const auto v = gm::best_single_k_then_zero(100);
    CHECK(v.t == 65);
    CHECK(std::abs(v.k - 0.9883) <= 5e-5);
    CHECK(std::abs(v.pwin - 0.566684) <= 5e-7);
}
