#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "maxstop/error.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/rng.hpp"
#include "maxstop/simulation.hpp"
#include "maxstop/strategy.hpp"

using namespace maxstop;

namespace {

RunRecord play(std::vector<double> k, std::vector<double> draws) {
    return play_run(CutoffVector(std::move(k)), draws);
}

}  // namespace

TEST_CASE("play_run examples") {
    auto r = play({0.5, 0.0}, {0.3, 0.6});
    CHECK(r.win);
    CHECK(r.accept_round == 2);
    CHECK(r.max_position == 2);

    r = play({0.5, 0.0}, {0.7, 0.9});
    CHECK_FALSE(r.win);
    CHECK(r.false_positive);
    CHECK(r.accept_round == 1);
    CHECK(r.max_position == 2);

    r = play({0.5, 0.0}, {0.4, 0.2});  // maximum declined in round 1
    CHECK_FALSE(r.win);
    CHECK_FALSE(r.false_positive);
    CHECK(r.accept_round == 2);
    CHECK(r.max_position == 1);
    CHECK(r.max_value == 0.4);

    r = play({0.672608, 0.545532, 0.0}, {0.60, 0.40, 0.55});
    CHECK(r.accept_round == 3);
    CHECK(r.max_position == 1);
    CHECK_FALSE(r.win);
    CHECK_FALSE(r.false_positive);

    r = play({0.5, 0.0}, {0.8, 0.1});
    CHECK(r.win);
    CHECK(r.accept_round == 1);

    // Ties go to the first maximum.
    r = play({0.9, 0.9, 0.0}, {0.5, 0.5, 0.5});
    CHECK(r.max_position == 1);
    CHECK(r.accept_round == 3);
    CHECK_FALSE(r.win);
    CHECK_FALSE(r.false_positive);

    CHECK_THROWS_AS((void)play({0.5, 0.0}, {0.3}), InvalidInput);
}

TEST_CASE("run records are consistent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = testgen::random_n(rng, 1, 20);
        const auto k = testgen::random_cutoffs(rng, n);
        std::vector<double> d(static_cast<std::size_t>(n));
        for (auto& v : d) v = u(rng);
        const auto rec = play_run(k, d);
        REQUIRE(rec.accept_round >= 1);
        REQUIRE(rec.accept_round <= n);
        REQUIRE(d[static_cast<std::size_t>(rec.accept_round - 1)] >= k.at_round(rec.accept_round));
        for (int r = 1; r < rec.accept_round; ++r) REQUIRE(d[static_cast<std::size_t>(r - 1)] < k.at_round(r));
        REQUIRE(rec.win == (rec.accept_round == rec.max_position));
        REQUIRE_FALSE((rec.win && rec.false_positive));
        if (!rec.win) REQUIRE(rec.false_positive == (rec.accept_round < rec.max_position));
    }
}

TEST_CASE("counter RNG") {
    const CounterRng a(42);
    const CounterRng b(42);
    const CounterRng c(43);
    CHECK(a.uniform(5, 3) == b.uniform(5, 3));
    CHECK(a.uniform(5, 3) != c.uniform(5, 3));
    CHECK(a.uniform(5, 3) != a.uniform(6, 3));
    std::vector<double> row(10);
    a.fill(9, row);
    for (std::size_t d = 0; d < row.size(); ++d) {
        CHECK(row[d] == a.uniform(9, d));
        CHECK(row[d] > 0.0);
        CHECK(row[d] < 1.0);
        const double scaled = std::ldexp(row[d], 53);
        CHECK(scaled == std::floor(scaled));
        CHECK(std::fmod(scaled, 2.0) == 1.0);
    }
    CHECK(CounterRng::to_unit(0) == 0x1p-53);
    CHECK(CounterRng::to_unit(~0ULL) == 1.0 - 0x1p-53);
}

TEST_CASE("exact sums are order independent") {
    const CounterRng rng(3);
    ExactSum fwd, back;
    for (int i = 0; i < 1000; ++i) fwd.add_draw(rng.uniform(0, i));
    for (int i = 999; i >= 0; --i) back.add_draw(rng.uniform(0, i));
    CHECK(fwd == back);
    double plain = 0.0;
    for (int i = 0; i < 1000; ++i) plain += rng.uniform(0, i);
    CHECK(std::abs(fwd.value() - plain) <= 1e-10);
}

TEST_CASE("parallel tallies equal the serial reference") {
    const std::vector<CutoffVector> ks{gm::naive_cutoffs(10), gm::gm_cutoffs(5), approx_cutoffs(7)};
    const auto ref = simulate_many_serial(ks, 20000, 99);
    for (int threads : {1, 2, 4, 8}) {
        CAPTURE(threads);
        const auto par = simulate_many(ks, 20000, 99, threads);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(par[i] == ref[i]);
    }
    CHECK(simulate_many(ks, 20000, 99) == simulate_many(ks, 20000, 99));
    CHECK_FALSE(simulate_many(ks, 20000, 100)[0] == ref[0]);
}

TEST_CASE("common draws across strategies and game lengths") {
    // Run t of a short game uses the first draws of run t of a long one, so a
    // 3-round game simulated alone or beside a 10-round game tallies the same.
    const std::vector<CutoffVector> both{gm::naive_cutoffs(3), gm::naive_cutoffs(10)};
    const auto pair = simulate_many(both, 5000, 1);
    const auto alone = simulate(gm::naive_cutoffs(3), 5000, 1);
    CHECK(pair[0] == alone);
}

TEST_CASE("tally bookkeeping") {
    const auto k = gm::gm_cutoffs(6);
    const auto t = simulate(k, 50000, 5);
    CHECK(t.runs == 50000);
    CHECK(t.n == 6);
    CHECK(t.master_seed == 5);
    std::uint64_t outcomes = 0, positions = 0, live = 0;
    for (int i = 0; i < 6; ++i) {
        outcomes += t.win[std::size_t(i)] + t.false_positive[std::size_t(i)] + t.false_negative[std::size_t(i)];
        positions += t.max_position[std::size_t(i)];
        live += t.live_until[std::size_t(i)];
    }
    CHECK(outcomes == t.runs);
    CHECK(positions == t.runs);
    CHECK(live == t.runs);
    CHECK(t.continued(0) == t.runs);
    CHECK(t.false_positive[5] == 0);  // the last round never false-positives
    CHECK(t.false_negative[5] == 0);
    CHECK_FALSE(compare_to_prediction(t, outcome_table(k)).insufficient_runs);
}

TEST_CASE("single run and invalid run counts") {
    const auto t = simulate(gm::naive_cutoffs(4), 1, 8);
    CHECK(t.runs == 1);
    CHECK(t.total_wins() <= 1);
    CHECK_THROWS_AS((void)simulate(gm::naive_cutoffs(4), 0, 8), InvalidInput);
    CHECK_THROWS_AS((void)simulate_many_serial({}, 10, 8), InvalidInput);
}

TEST_CASE("an empty tally is flagged") {
    const SimulationTally empty(3, 0);
    const auto rep = compare_to_prediction(empty, outcome_table(gm::naive_cutoffs(3)));
    CHECK(rep.insufficient_runs);
    CHECK(std::isinf(rep.max_abs_z));
    CHECK_THROWS_AS((void)compare_to_prediction(empty, outcome_table(gm::naive_cutoffs(4))), InvalidInput);
}

TEST_CASE("discrepancy rows") {
    auto row = make_discrepancy_row(2, Outcome::win, 250, 1000, 0.25);
    CHECK(row.realized_freq == 0.25);
    CHECK(row.z == 0.0);
    CHECK(row.standard_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 1000)));
    row = make_discrepancy_row(1, Outcome::false_positive, 0, 1000, 0.0);
    CHECK(row.z == 0.0);
    row = make_discrepancy_row(1, Outcome::false_positive, 3, 1000, 0.0);
    CHECK(std::isinf(row.z));
}

TEST_CASE("maxima: position is uniform and mean is n/(n+1)") {
    const int n = 10;
    const std::uint64_t runs = 1000000;
    const auto t = simulate(gm::naive_cutoffs(n), runs, 2024);
    for (int i = 0; i < n; ++i) {
        const double f = double(t.max_position[std::size_t(i)]) / double(runs);
        CHECK(std::abs(f - 0.1) <= 0.002);
    }
    // Max of n uniforms: mean n/(n+1), variance n/((n+1)^2 (n+2)).
    const double mean = double(n) / (n + 1);
    const double sd = std::sqrt(double(n) / ((n + 1.0) * (n + 1.0) * (n + 2.0)));
    CHECK(std::abs(t.mean_max() - mean) <= 5 * sd / std::sqrt(double(runs)));
}

TEST_CASE("conditional maximum after round 1 exceeds (n-1)/n") {
    // E[max of draws 2..n | still live after round 1] for first cutoff k1:
    // ((n-1) k1^(n+1)/(n+1) + k1 (n-1)(1 - k1^n)/n) / (k1 - k1^n/n).
    const auto closed = [](int n, double k1) {
        const double num = (n - 1) * std::pow(k1, n + 1) / (n + 1) + k1 * (n - 1) * (1 - std::pow(k1, n)) / n;
        return num / (k1 - std::pow(k1, n) / n);
    };
    const std::pair<int, double> expected[] = {{3, 0.724}, {5, 0.824}, {10, 0.907}};
    for (auto [n, value] : expected) {
        CAPTURE(n);
        const auto k = gm::naive_cutoffs(n);
        const auto t = simulate(k, 1000000, 77);
        const double c = closed(n, k.at_round(1));
        const double se = 0.25 / std::sqrt(double(t.continued(1)));  // sd of a max is below 0.25
        CHECK(std::abs(t.conditional_max_mean(1) - c) <= 5 * se);
        CHECK(std::abs(c - value) <= 1e-3);
        CHECK(c > double(n - 1) / n);
        CHECK(double(t.continued(1)) / 1e6 ==
              doctest::Approx(continue_probability(k, 1)).epsilon(0.01));
    }
}

TEST_CASE("simulated totals") {
    const auto opt3 = cutoffs_for({StrategyKind::optimal, 3, {}, {}});
    const auto a = simulate(opt3, 1000000, 20180420);
    CHECK(std::abs(double(a.total_wins()) / 1e6 - 0.6798) <= 0.002);
    const auto b = simulate(gm::naive_cutoffs(10), 1000000, 20180420);
    CHECK(std::abs(double(b.total_wins()) / 1e6 - 0.5742) <= 0.002);
    const auto opt5 = cutoffs_for({StrategyKind::optimal, 5, {}, {}});
    CHECK(std::abs(simulate(opt5, 1000000, 20180420).conditional_max_mean(1) - 0.824) <= 1e-3);
}

TEST_CASE("tallies agree with the predictions") {
    for (const auto& k : {gm::gm_cutoffs(3), approx_cutoffs(8), single_k_cutoffs(6, 0.7)}) {
        CAPTURE(k.n());
        const auto rep = compare_to_prediction(simulate(k, 200000, 31), outcome_table(k));
        CHECK(rep.max_abs_z <= 4.5);
        CHECK_FALSE(rep.insufficient_runs);
    }
}
