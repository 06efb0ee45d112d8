#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxstop/cutoff_vector.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/strategy.hpp"

namespace maxstop {

/// Outcome of one game.
struct RunRecord {
    bool win = false;             // accepted draw is the sample maximum
    bool false_positive = false;  // accepted before the maximum arrived
    int accept_round = 0;         // first round whose draw clears its cutoff
    int max_position = 0;         // first index of the sample maximum
    double max_value = 0.0;
};

/// Plays one game. Ties in the draws resolve to the first maximum. A loss
/// with false_positive == false means the maximum was declined at
/// max_position (a false negative).
[[nodiscard]] RunRecord play_run(const CutoffVector& k, std::span<const double> draws);

/// Sum of simulator draws, held exactly. Every draw is an odd multiple of
/// 2^-53, so sums are integers in that unit and merge in any order.
__extension__ typedef unsigned __int128 uint128;

struct ExactSum {
    uint128 units = 0;

    void add_draw(double v) noexcept;
    [[nodiscard]] double value() const noexcept;

    ExactSum& operator+=(const ExactSum& o) noexcept {
        units += o.units;
        return *this;
    }
    friend bool operator==(const ExactSum&, const ExactSum&) = default;
};

struct SimulationTally {
    int n = 0;
    std::uint64_t runs = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> win;             // by accept round
    std::vector<std::uint64_t> false_positive;  // by accept round
    std::vector<std::uint64_t> false_negative;  // by max position
    std::vector<std::uint64_t> max_position;    // histogram of max position
    ExactSum max_sum;
    // Runs whose live phase (no acceptance, maximum not yet passed) ends at
    // round L = min(accept_round, max_position), with their maxima summed.
    std::vector<std::uint64_t> live_until;
    std::vector<ExactSum> live_until_max_sum;

    SimulationTally() = default;
    SimulationTally(int n, std::uint64_t master_seed);

    void add(const RunRecord& rec);
    void merge(const SimulationTally& other);

    [[nodiscard]] double mean_max() const;
    /// Runs still live after round r (r = 0 gives all runs).
    [[nodiscard]] std::uint64_t continued(int r) const;
    /// Mean of the maximum of draws r+1..n over runs live after round r.
    [[nodiscard]] double conditional_max_mean(int r) const;
    [[nodiscard]] std::uint64_t total_wins() const;

    friend bool operator==(const SimulationTally&, const SimulationTally&) = default;
};

/**
 * Runs `runs` games per strategy on common draws: run t uses draws
 * (master_seed, t, 0..n-1), so every strategy (and every game length) sees
 * the same universe. Parallelized over runs with OpenMP; `threads` <= 0 uses
 * the OpenMP default. The result does not depend on the thread count.
 */
[[nodiscard]] std::vector<SimulationTally> simulate_many(std::span<const CutoffVector> strategies,
                                                         std::uint64_t runs,
                                                         std::uint64_t master_seed, int threads = 0);

/// Single-threaded reference for simulate_many.
[[nodiscard]] std::vector<SimulationTally> simulate_many_serial(
    std::span<const CutoffVector> strategies, std::uint64_t runs, std::uint64_t master_seed);

[[nodiscard]] SimulationTally simulate(const CutoffVector& k, std::uint64_t runs,
                                       std::uint64_t master_seed, int threads = 0);

[[nodiscard]] SimulationTally simulate(const StrategySpec& spec, std::uint64_t runs,
                                       std::uint64_t master_seed, int threads = 0);

struct DiscrepancyRow {
    int round = 0;  // 0 marks the total-win row
    Outcome outcome = Outcome::win;
    std::uint64_t realized_count = 0;
    double realized_freq = 0.0;
    double predicted_prob = 0.0;
    double standard_error = 0.0;  // binomial, from the predicted probability
    double z = 0.0;
};

struct DiscrepancyReport {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t master_seed = 0;
    std::vector<DiscrepancyRow> rows;
    double max_abs_z = 0.0;
    bool insufficient_runs = false;
};

/// Builds one row; shared by the simulator and sampling-oracle reports.
[[nodiscard]] DiscrepancyRow make_discrepancy_row(int round, Outcome outcome, std::uint64_t count,
                                                  std::uint64_t samples, double predicted);

/// Per (round, outcome) cell: W and FP by accept round, FN by max position,
/// C (still live after the round) for r < n, plus a total-win row.
[[nodiscard]] DiscrepancyReport compare_to_prediction(const SimulationTally& tally,
                                                      const RoundOutcomeTable& table);

}  // namespace maxstop
