#include "maxstop/oracle.hpp"

#include <cmath>

#include <omp.h>

#include "maxstop/error.hpp"
#include "maxstop/rng.hpp"

namespace maxstop::oracle {

namespace {

std::size_t first_argmax(std::span<const double> p) {
    std::size_t m = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] > p[m]) m = i;
    }
    return m;
}

}  // namespace

RegionPredicate::RegionPredicate(CutoffVector k, int round, Outcome outcome)
    : k_(std::move(k)), round_(round), outcome_(outcome) {
    if (round_ < 1 || round_ > k_.n()) throw InvalidInput("round outside [1, n]");
}

bool RegionPredicate::contains(std::span<const double> point) const {
    const auto kv = k_.values();
    const std::size_t top = first_argmax(point);
    const auto r = static_cast<std::size_t>(round_ - 1);
    for (std::size_t j = 0; j < r; ++j) {
        if (!(point[j] < kv[j] && j != top)) return false;
    }
    const bool clears = point[r] >= kv[r];
    const bool is_max = r == top;
    switch (outcome_) {
        case Outcome::win: return clears && is_max;
        case Outcome::false_positive: return clears && !is_max;
        case Outcome::false_negative: return !clears && is_max;
        case Outcome::cont: return !clears && !is_max;
    }
    return false;
}

Cell classify_point(const CutoffVector& k, std::span<const double> point) {
    const auto kv = k.values();
    const std::size_t top = first_argmax(point);
    for (std::size_t j = 0; j < kv.size(); ++j) {
        const int round = static_cast<int>(j) + 1;
        if (point[j] >= kv[j]) return {round, j == top ? Outcome::win : Outcome::false_positive};
        if (j == top) return {round, Outcome::false_negative};
    }
    // Unreachable with k_n = 0 and points in (0,1).
    throw std::logic_error("point escaped every region");
}

namespace {

OracleCounts empty_counts(int n, std::uint64_t seed) {
    OracleCounts c;
    c.n = n;
    c.seed = seed;
    c.counts.assign(static_cast<std::size_t>(n), {0, 0, 0, 0});
    return c;
}

void record(OracleCounts& c, const Cell& cell) {
    ++c.samples;
    ++c.counts[static_cast<std::size_t>(cell.round - 1)][static_cast<std::size_t>(cell.outcome)];
    for (int r = 1; r < cell.round; ++r) {
        ++c.counts[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(Outcome::cont)];
    }
}

void merge(OracleCounts& into, const OracleCounts& from) {
    into.samples += from.samples;
    for (std::size_t r = 0; r < into.counts.size(); ++r) {
        for (std::size_t o = 0; o < 4; ++o) into.counts[r][o] += from.counts[r][o];
    }
}

}  // namespace

OracleCounts sample_cells_serial(const CutoffVector& k, std::uint64_t samples, std::uint64_t seed) {
    const CounterRng rng(seed);
    auto counts = empty_counts(k.n(), seed);
    std::vector<double> point(static_cast<std::size_t>(k.n()));
    for (std::uint64_t i = 0; i < samples; ++i) {
        rng.fill(i, point);
        record(counts, classify_point(k, point));
    }
    return counts;
}

OracleCounts sample_cells(const CutoffVector& k, std::uint64_t samples, std::uint64_t seed,
                          int threads) {
    const CounterRng rng(seed);
    auto counts = empty_counts(k.n(), seed);
    const int team = threads > 0 ? threads : omp_get_max_threads();
    const auto total = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(team)
    {
        auto local = empty_counts(k.n(), seed);
        std::vector<double> point(static_cast<std::size_t>(k.n()));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            rng.fill(static_cast<std::uint64_t>(i), point);
            record(local, classify_point(k, point));
        }
#pragma omp critical(maxstop_oracle_merge)
        merge(counts, local);
    }
    return counts;
}

namespace {

OracleEstimate binomial_estimate(std::uint64_t hits, std::uint64_t samples) {
    if (samples == 0) throw InvalidInput("oracle needs at least one sample");
    const double m = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / m;
    return {p, std::sqrt(p * (1.0 - p) / m)};
}

}  // namespace

OracleEstimate estimate(const OracleCounts& counts, int r, Outcome o) {
    return binomial_estimate(counts.count(r, o), counts.samples);
}

OracleEstimate oracle_probability(const CutoffVector& k, int r, Outcome outcome,
                                  std::uint64_t samples, std::uint64_t seed, int threads) {
    const RegionPredicate region(k, r, outcome);
    const CounterRng rng(seed);
    const int team = threads > 0 ? threads : omp_get_max_threads();
    const auto total = static_cast<std::int64_t>(samples);
    std::uint64_t hits = 0;
#pragma omp parallel num_threads(team) reduction(+ : hits)
    {
        std::vector<double> point(static_cast<std::size_t>(k.n()));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            rng.fill(static_cast<std::uint64_t>(i), point);
            if (region.contains(point)) ++hits;
        }
    }
    return binomial_estimate(hits, samples);
}

DiscrepancyReport compare_to_prediction(const OracleCounts& counts, const RoundOutcomeTable& table) {
    if (counts.n != table.n) throw InvalidInput("oracle counts and prediction have different n");
    DiscrepancyReport rep;
    rep.n = counts.n;
    rep.samples = counts.samples;
    rep.master_seed = counts.seed;
    for (int r = 1; r <= counts.n; ++r) {
        const auto& p = table.round(r);
        for (const Outcome o : {Outcome::win, Outcome::false_positive, Outcome::false_negative, Outcome::cont}) {
            rep.rows.push_back(make_discrepancy_row(r, o, counts.count(r, o), counts.samples, p.get(o)));
        }
    }
    for (const auto& row : rep.rows) rep.max_abs_z = std::max(rep.max_abs_z, std::abs(row.z));
    rep.insufficient_runs = counts.samples == 0;
    return rep;
}

}  // namespace maxstop::oracle
