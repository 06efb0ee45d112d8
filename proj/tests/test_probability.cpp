#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "generators.hpp"
#include "maxstop/error.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/strategy.hpp"

using namespace maxstop;

namespace {

CutoffVector kv(std::vector<double> k) { return CutoffVector(std::move(k)); }

const CutoffVector opt3 = kv({0.672608, 0.545532, 0.0});
const CutoffVector opt5 = kv({0.8076, 0.7677, 0.7124, 0.6229, 0.0});

}  // namespace

TEST_CASE("exponent table rows sum to n") {
    for (int n = 1; n <= 64; ++n) {
        for (int r = 1; r <= n; ++r) {
            for (int i = 1; i <= r; ++i) {
                int sum = 0;
                for (int j = 1; j <= r; ++j) sum += continuation_exponent(i, j, n, r);
                REQUIRE(sum == n);
            }
        }
    }
    CHECK(continuation_exponent(2, 2, 6, 4) == 4);
    CHECK(continuation_exponent(1, 3, 6, 4) == 1);
    CHECK(continuation_exponent(3, 1, 6, 4) == 0);
}

TEST_CASE("continuation coefficients for n = 6") {
    // (n-r)/((n-r+i-1)(n-r+i))
    CHECK(continuation_coefficient(1, 6, 1) == doctest::Approx(5.0 / (5.0 * 6.0)));
    CHECK(continuation_coefficient(2, 6, 3) == doctest::Approx(3.0 / (4.0 * 5.0)));
    CHECK(continuation_coefficient(1, 6, 5) == doctest::Approx(1.0 / 2.0));
    CHECK(continuation_coefficient(5, 6, 5) == doctest::Approx(1.0 / 30.0));
}

TEST_CASE("ipow") {
    CHECK(ipow(2.0, 0) == 1.0);
    CHECK(ipow(2.0, 10) == 1024.0);
    CHECK(ipow(0.0, 0) == 1.0);
    CHECK(ipow(0.5, 3) == 0.125);
}

TEST_CASE("continue probability examples") {
    CHECK(continue_probability(kv({0.5, 0.0}), 1) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(continue_probability(gm::naive_cutoffs(5), 0) == 1.0);
    CHECK(continue_probability(gm::naive_cutoffs(5), 5) == 0.0);

    const double k1 = 0.9, k2 = 0.8, k3 = 0.7;
    const double expanded = k1 * k2 * k3 - k1 * k1 * k2 * k3 / 2 - k2 * k2 * k2 * k3 / 6 - k3 * k3 * k3 * k3 / 12;
    CHECK(std::abs(continue_probability(kv({k1, k2, k3, 0.0}), 3) - expanded) <= 1e-15);
}

TEST_CASE("false negative examples") {
    CHECK(false_negative_probability(opt3, 1) == doctest::Approx(0.1014).epsilon(5e-4));
    CHECK(std::abs(false_negative_probability(opt3, 1) - std::pow(0.672608, 3) / 3) <= 1e-15);
    CHECK(false_negative_probability(opt3, 3) == 0.0);
    CHECK(std::abs(false_negative_probability(opt5, 2) - 0.0533) <= 5e-5);
}

TEST_CASE("win probability examples") {
    CHECK(win_probability_at_round(kv({0.5, 0.0}), 1) == doctest::Approx(0.375).epsilon(1e-15));
    const double k1 = 0.7, k2 = 0.4;
    CHECK(std::abs(win_probability_at_round(kv({k1, k2, 0.0}), 3) -
                   (k1 * k2 - k1 * k1 * k2 / 2 - k2 * k2 * k2 / 6)) <= 1e-15);
    const auto opt10 = kv({0.9056, 0.8965, 0.8861, 0.8739, 0.8593, 0.8414, 0.8182, 0.7860, 0.7329, 0.0});
    CHECK(std::abs(win_probability_at_round(opt10, 1) - 0.0629) <= 5e-5);
}

TEST_CASE("false positive examples") {
    CHECK(false_positive_probability_at_round(kv({0.5, 0.0}), 1) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(false_positive_probability_at_round(opt5, 5) == 0.0);
    CHECK(std::abs(false_positive_probability_at_round(opt5, 4) - 0.0305) <= 5e-5);
}

TEST_CASE("outcome table examples") {
    CHECK(std::abs(outcome_table(opt3).pw_total - 0.679846) <= 1e-6);
    // GM cutoffs for n = 3. Often quoted as 0.67785; the per-round values
    // sum to 0.6776.
    CHECK(std::abs(outcome_table(kv({0.689898, 0.5, 0.0})).pw_total - 0.6775599) <= 1e-6);
    CHECK(std::abs(outcome_table(gm::naive_cutoffs(100)).pw_total - 0.5304) <= 1e-4);
}

TEST_CASE("n = 3 per-round predictions for naive, GM and optimal cutoffs") {
    struct Row {
        double w, fp, fn;
    };
    // Reference values carry 4 places, some truncated rather than rounded.
    const auto check = [](const CutoffVector& k, const std::vector<Row>& rows, double total) {
        const auto t = outcome_table(k);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            CAPTURE(r + 1);
            CHECK(std::abs(t.rows[r].pw - rows[r].w) <= 1e-4);
            if (rows[r].fp >= 0) CHECK(std::abs(t.rows[r].pfp - rows[r].fp) <= 1e-4);
            if (rows[r].fn >= 0) CHECK(std::abs(t.rows[r].pfn - rows[r].fn) <= 1e-4);
        }
        CHECK(std::abs(t.pw_total - total) <= 1e-4);
    };
    check(gm::naive_cutoffs(3), {{0.2346, 0.0988, 0.0988}, {0.2423, 0.0826, 0.0417}, {0.2014, -1, -1}}, 0.6782);
    check(gm::gm_cutoffs(3), {{0.2239, 0.0862, 0.1095}, {0.2486, 0.0851, 0.0417}, {0.2051, -1, -1}}, 0.6776);
    check(opt3, {{0.2319, 0.0954, 0.1014}, {0.2315, 0.0691, 0.0541}, {0.2165, -1, -1}}, 0.6798);
}

TEST_CASE("n = 5 per-round predictions") {
    const auto t = outcome_table(opt5);
    const double w[] = {0.1313, 0.1314, 0.1294, 0.1243, 0.1125};
    const double fp[] = {0.0611, 0.0558, 0.0462, 0.0305};
    const double fn[] = {0.0687, 0.0533, 0.0367, 0.0188};
    for (int r = 1; r <= 5; ++r) {
        CAPTURE(r);
        // These cutoffs are themselves rounded to 4 places.
        CHECK(std::abs(t.round(r).pw - w[r - 1]) <= 1.5e-4);
        if (r < 5) {
            CHECK(std::abs(t.round(r).pfp - fp[r - 1]) <= 1.5e-4);
            CHECK(std::abs(t.round(r).pfn - fn[r - 1]) <= 1.5e-4);
        }
    }
    const auto naive = outcome_table(gm::naive_cutoffs(5));
    const double nw[] = {0.1345, 0.1362, 0.1362, 0.1269, 0.0868};
    for (int r = 1; r <= 5; ++r) CHECK(std::abs(naive.round(r).pw - nw[r - 1]) <= 5.01e-5);
    CHECK(std::abs(naive.pw_total - 0.6205) <= 5.01e-5);
    const auto g = outcome_table(gm::gm_cutoffs(5));
    const double gw[] = {0.1238, 0.1309, 0.1380, 0.1358, 0.0918};
    for (int r = 1; r <= 5; ++r) CHECK(std::abs(g.round(r).pw - gw[r - 1]) <= 5.01e-5);
    CHECK(std::abs(g.pw_total - 0.6203) <= 5.01e-5);
}

TEST_CASE("n = 10 selected predictions") {
    const auto naive = outcome_table(gm::naive_cutoffs(10));
    CHECK(std::abs(naive.round(1).pw - 0.0651) <= 5.01e-5);
    CHECK(std::abs(naive.round(9).pfp - 0.0180) <= 5.01e-5);
    CHECK(std::abs(naive.round(10).pw - 0.0253) <= 5.01e-5);
    CHECK(std::abs(naive.pw_total - 0.5743) <= 5.01e-5);
    const auto g = outcome_table(gm::gm_cutoffs(10));
    CHECK(std::abs(g.round(1).pfn - 0.0416) <= 5.01e-5);
    CHECK(std::abs(g.round(9).pfp - 0.0210) <= 5.01e-5);
    CHECK(std::abs(g.pw_total - 0.5772) <= 5.01e-5);
}

TEST_CASE("conservation holds for random cutoffs") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = testgen::random_n(rng, 1, 64);
        const auto k = testgen::random_cutoffs(rng, n);
        const auto t = outcome_table(k);
        double prev = 1.0;
        for (int r = 1; r <= n; ++r) {
            const auto& row = t.round(r);
            REQUIRE(std::abs(row.pw + row.pfp + row.pfn + row.pc - prev) <= 1e-12);
            REQUIRE(row.pc <= prev + 1e-15);
            for (double v : {row.pw, row.pfp, row.pfn, row.pc}) REQUIRE((v >= 0.0 && v <= 1.0));
            prev = row.pc;
        }
        REQUIRE(t.round(n).pc == 0.0);
        REQUIRE(std::abs(t.pw_total + t.pfp_total + t.pfn_total - 1.0) <= 1e-10);
        REQUIRE(std::abs(total_win_probability(k) - t.pw_total) <= 1e-13);
    }
}

TEST_CASE("full table agrees with per-round continuation") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = testgen::random_n(rng, 1, 300);
        const auto k = testgen::random_cutoffs(rng, n);
        const auto t = outcome_table(k);
        for (int r = 1; r <= n; ++r) {
            REQUIRE(std::abs(t.round(r).pc - continue_probability(k, r)) <= 1e-13);
        }
    }
}

TEST_CASE("k1 = 0 ends the game in round 1") {
    for (int n : {1, 2, 5, 30}) {
        std::vector<double> z(static_cast<std::size_t>(n), 0.0);
        const auto t = outcome_table(kv(z));
        CHECK(t.round(1).pw == doctest::Approx(1.0 / n));
        CHECK(t.round(1).pfp == doctest::Approx(double(n - 1) / n));
        CHECK(t.round(1).pfn == 0.0);
        CHECK(t.round(1).pc == 0.0);
    }
}

TEST_CASE("identical cutoffs specialize the general engine") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testgen::random_n(rng, 1, 12);
        const double k = u(rng);
        const auto t = outcome_table(single_k_cutoffs(n, k));
        for (int r = 1; r <= n; ++r) {
            REQUIRE(std::abs(t.round(r).pw - single_k_round_win_probability(n, r, k)) <= 1e-12);
        }
        REQUIRE(std::abs(t.pw_total - single_k_win_probability(n, k)) <= 1e-12);
    }
}

TEST_CASE("single-k examples") {
    CHECK(single_k_win_probability(2, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(std::abs(single_k_win_probability(100, 0.985111) - 0.521797) <= 1e-6);
    CHECK(single_k_win_probability(7, 0.0) == doctest::Approx(1.0 / 7.0));
    CHECK_THROWS_AS((void)single_k_win_probability(5, 1.0), InvalidInput);
    CHECK_THROWS_AS((void)single_k_win_probability(5, -0.1), InvalidInput);
}

TEST_CASE("harmonic numbers match digamma(n) + gamma") {
    CHECK(harmonic_number(0) == 0.0);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(2) == doctest::Approx(3.0 / 2.0).epsilon(1e-15));
    CHECK(harmonic_number(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(harmonic_number(5) == doctest::Approx(137.0 / 60.0).epsilon(1e-15));
    // Asymptotic digamma: H_m = ln m + gamma + 1/(2m) - 1/(12 m^2) + 1/(120 m^4) - ...
    const double m = 1000.0;
    const double h = std::log(m) + 0.57721566490153286 + 1 / (2 * m) - 1 / (12 * m * m) + 1 / (120 * m * m * m * m);
    CHECK(std::abs(harmonic_number(1000) - h) <= 1e-12);
}

TEST_CASE("single-k derivative matches central differences") {
    for (int n : {2, 3, 10, 100}) {
        for (double k : {0.1, 0.5, 0.9}) {
            const double h = 1e-6;
            const double fd = (single_k_win_probability(n, k + h) - single_k_win_probability(n, k - h)) / (2 * h);
            CHECK(std::abs(single_k_win_probability_derivative(n, k) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = testgen::random_n(rng, 2, 12);
        // Interior point with well separated entries so +-h stays valid.
        std::vector<double> k(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j + 1 < n; ++j) {
            k[static_cast<std::size_t>(j)] = 0.95 - 0.9 * (j + std::uniform_real_distribution<double>(0.2, 0.8)(rng)) / n;
        }
        const auto g = total_win_probability_gradient(kv(k));
        REQUIRE(g.size() == static_cast<std::size_t>(n - 1));
        for (int j = 0; j + 1 < n; ++j) {
            const double h = 1e-6;
            auto up = k;
            auto dn = k;
            up[static_cast<std::size_t>(j)] += h;
            dn[static_cast<std::size_t>(j)] -= h;
            const double fd = (total_win_probability(kv(up)) - total_win_probability(kv(dn))) / (2 * h);
            CAPTURE(n);
            CAPTURE(j);
            CHECK(std::abs(g[static_cast<std::size_t>(j)] - fd) <= 1e-6 * std::max(std::abs(fd), 1e-2));
        }
    }
}

TEST_CASE("invalid rounds are rejected") {
    CHECK_THROWS_AS((void)continue_probability(opt3, 4), InvalidInput);
    CHECK_THROWS_AS((void)continue_probability(opt3, -1), InvalidInput);
    CHECK_THROWS_AS((void)false_negative_probability(opt3, 0), InvalidInput);
    CHECK_THROWS_AS((void)win_probability_at_round(opt3, 4), InvalidInput);
    CHECK_THROWS_AS((void)false_positive_probability_at_round(opt3, 0), InvalidInput);
}
