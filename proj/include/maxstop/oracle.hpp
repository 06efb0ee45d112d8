#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxstop/cutoff_vector.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/simulation.hpp"

namespace maxstop::oracle {

/**
 * Boolean test on a point of the unit n-cube for "the game reaches round r
 * and round r ends with `outcome`". Reaching round r means every earlier
 * draw was below its cutoff and was not the sample maximum. The maximum is
 * the first index attaining the largest value.
 */
class RegionPredicate {
public:
    RegionPredicate(CutoffVector k, int round, Outcome outcome);

    [[nodiscard]] bool contains(std::span<const double> point) const;

    [[nodiscard]] int round() const noexcept { return round_; }
    [[nodiscard]] Outcome outcome() const noexcept { return outcome_; }

private:
    CutoffVector k_;
    int round_;
    Outcome outcome_;
};

struct Cell {
    int round = 0;
    Outcome outcome = Outcome::win;  // never `cont`
};

/// The terminal (round, W/FP/FN) region containing `point`.
[[nodiscard]] Cell classify_point(const CutoffVector& k, std::span<const double> point);

/// Hit counts for every cell, C included (C at r counts points whose
/// terminal round is after r).
struct OracleCounts {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::array<std::uint64_t, 4>> counts;  // [r-1][Outcome]

    [[nodiscard]] std::uint64_t count(int r, Outcome o) const {
        return counts.at(static_cast<std::size_t>(r - 1))[static_cast<std::size_t>(o)];
    }

    friend bool operator==(const OracleCounts&, const OracleCounts&) = default;
};

struct OracleEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;  // binomial, from the estimate
};

/// Sample i is the point (u(seed,i,0), ..., u(seed,i,n-1)) of CounterRng.
[[nodiscard]] OracleCounts sample_cells_serial(const CutoffVector& k, std::uint64_t samples,
                                               std::uint64_t seed);

/// OpenMP version of sample_cells_serial; identical counts for any thread count.
[[nodiscard]] OracleCounts sample_cells(const CutoffVector& k, std::uint64_t samples,
                                        std::uint64_t seed, int threads = 0);

[[nodiscard]] OracleEstimate estimate(const OracleCounts& counts, int r, Outcome o);

/// Volume of one region by direct predicate evaluation on sampled points.
[[nodiscard]] OracleEstimate oracle_probability(const CutoffVector& k, int r, Outcome outcome,
                                                std::uint64_t samples, std::uint64_t seed,
                                                int threads = 0);

/// Oracle counts against the closed forms, in the simulator's report format
/// (C rows included).
[[nodiscard]] DiscrepancyReport compare_to_prediction(const OracleCounts& counts,
                                                      const RoundOutcomeTable& table);

/**
 * Hand-integrated polynomials for small games: all four outcomes for
 * n = 2, 3, 4 and the FN and C columns for n = 5, 6. Empty where no
 * polynomial was published.
 */
[[nodiscard]] std::optional<double> fixture_probability(const CutoffVector& k, int r, Outcome outcome);

}  // namespace maxstop::oracle
