#include "maxstop/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include <omp.h>

#include "maxstop/error.hpp"
#include "maxstop/rng.hpp"

namespace maxstop {

RunRecord play_run(const CutoffVector& k, std::span<const double> draws) {
    const int n = k.n();
    if (draws.size() != static_cast<std::size_t>(n)) throw InvalidInput("need one draw per round");
    RunRecord rec;
    int mp = 0;
    for (int i = 1; i < n; ++i) {
        if (draws[static_cast<std::size_t>(i)] > draws[static_cast<std::size_t>(mp)]) mp = i;
    }
    int pg = n - 1;
    for (int r = 0; r < n; ++r) {
        if (draws[static_cast<std::size_t>(r)] >= k.values()[static_cast<std::size_t>(r)]) {
            pg = r;
            break;
        }
    }
    rec.accept_round = pg + 1;
    rec.max_position = mp + 1;
    rec.max_value = draws[static_cast<std::size_t>(mp)];
    rec.win = pg == mp;
    rec.false_positive = !rec.win && pg < mp;
    return rec;
}

void ExactSum::add_draw(double v) noexcept {
    const double scaled = std::ldexp(v, 53);
    assert(scaled == std::floor(scaled));
    units += static_cast<std::uint64_t>(scaled);
}

double ExactSum::value() const noexcept {
    return std::ldexp(static_cast<double>(units), -53);
}

SimulationTally::SimulationTally(int n_, std::uint64_t seed)
    : n(n_),
      master_seed(seed),
      win(static_cast<std::size_t>(n_), 0),
      false_positive(static_cast<std::size_t>(n_), 0),
      false_negative(static_cast<std::size_t>(n_), 0),
      max_position(static_cast<std::size_t>(n_), 0),
      live_until(static_cast<std::size_t>(n_), 0),
      live_until_max_sum(static_cast<std::size_t>(n_)) {}

void SimulationTally::add(const RunRecord& rec) {
    ++runs;
    const auto pg = static_cast<std::size_t>(rec.accept_round - 1);
    const auto mp = static_cast<std::size_t>(rec.max_position - 1);
    if (rec.win) {
        ++win[pg];
    } else if (rec.false_positive) {
        ++false_positive[pg];
    } else {
        ++false_negative[mp];
    }
    ++max_position[mp];
    max_sum.add_draw(rec.max_value);
    const auto live = std::min(pg, mp);
    ++live_until[live];
    live_until_max_sum[live].add_draw(rec.max_value);
}

void SimulationTally::merge(const SimulationTally& o) {
    runs += o.runs;
    for (std::size_t i = 0; i < win.size(); ++i) {
        win[i] += o.win[i];
        false_positive[i] += o.false_positive[i];
        false_negative[i] += o.false_negative[i];
        max_position[i] += o.max_position[i];
        live_until[i] += o.live_until[i];
        live_until_max_sum[i] += o.live_until_max_sum[i];
    }
    max_sum += o.max_sum;
}

double SimulationTally::mean_max() const {
    return runs == 0 ? std::numeric_limits<double>::quiet_NaN()
                     : max_sum.value() / static_cast<double>(runs);
}

std::uint64_t SimulationTally::continued(int r) const {
    std::uint64_t c = 0;
    for (int l = r; l < n; ++l) c += live_until[static_cast<std::size_t>(l)];
    return c;
}

double SimulationTally::conditional_max_mean(int r) const {
    ExactSum s;
    std::uint64_t c = 0;
    for (int l = r; l < n; ++l) {
        c += live_until[static_cast<std::size_t>(l)];
        s += live_until_max_sum[static_cast<std::size_t>(l)];
    }
    return c == 0 ? std::numeric_limits<double>::quiet_NaN() : s.value() / static_cast<double>(c);
}

std::uint64_t SimulationTally::total_wins() const {
    std::uint64_t w = 0;
    for (auto v : win) w += v;
    return w;
}

namespace {

int longest(std::span<const CutoffVector> strategies) {
    if (strategies.empty()) throw InvalidInput("no strategies to simulate");
    int n = 0;
    for (const auto& k : strategies) n = std::max(n, k.n());
    return n;
}

std::vector<SimulationTally> empty_tallies(std::span<const CutoffVector> strategies,
                                           std::uint64_t seed) {
    std::vector<SimulationTally> t;
    t.reserve(strategies.size());
    for (const auto& k : strategies) t.emplace_back(k.n(), seed);
    return t;
}

void play_all(std::span<const CutoffVector> strategies, std::span<const double> draws,
              std::vector<SimulationTally>& out) {
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        const auto& k = strategies[s];
        out[s].add(play_run(k, draws.first(static_cast<std::size_t>(k.n()))));
    }
}

}  // namespace

std::vector<SimulationTally> simulate_many_serial(std::span<const CutoffVector> strategies,
                                                  std::uint64_t runs, std::uint64_t master_seed) {
    if (runs == 0) throw InvalidInput("runs must be at least 1");
    const int n = longest(strategies);
    const CounterRng rng(master_seed);
    auto tallies = empty_tallies(strategies, master_seed);
    std::vector<double> draws(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < runs; ++t) {
        rng.fill(t, draws);
        play_all(strategies, draws, tallies);
    }
    return tallies;
}

std::vector<SimulationTally> simulate_many(std::span<const CutoffVector> strategies,
                                           std::uint64_t runs, std::uint64_t master_seed,
                                           int threads) {
    if (runs == 0) throw InvalidInput("runs must be at least 1");
    const int n = longest(strategies);
    const CounterRng rng(master_seed);
    auto tallies = empty_tallies(strategies, master_seed);
    const int team = threads > 0 ? threads : omp_get_max_threads();
    const auto total = static_cast<std::int64_t>(runs);

#pragma omp parallel num_threads(team)
    {
        auto local = empty_tallies(strategies, master_seed);
        std::vector<double> draws(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < total; ++t) {
            rng.fill(static_cast<std::uint64_t>(t), draws);
            play_all(strategies, draws, local);
        }
#pragma omp critical(maxstop_simulate_merge)
        for (std::size_t s = 0; s < tallies.size(); ++s) tallies[s].merge(local[s]);
    }
    return tallies;
}

SimulationTally simulate(const CutoffVector& k, std::uint64_t runs, std::uint64_t master_seed,
                         int threads) {
    return simulate_many(std::span(&k, 1), runs, master_seed, threads).front();
}

SimulationTally simulate(const StrategySpec& spec, std::uint64_t runs, std::uint64_t master_seed,
                         int threads) {
    return simulate(cutoffs_for(spec), runs, master_seed, threads);
}

DiscrepancyRow make_discrepancy_row(int round, Outcome outcome, std::uint64_t count,
                                    std::uint64_t samples, double predicted) {
    DiscrepancyRow row;
    row.round = round;
    row.outcome = outcome;
    row.realized_count = count;
    row.predicted_prob = predicted;
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (samples == 0) {
        row.standard_error = inf;
        row.z = predicted > 0.0 ? -inf : 0.0;
        return row;
    }
    const double m = static_cast<double>(samples);
    row.realized_freq = static_cast<double>(count) / m;
    row.standard_error = std::sqrt(std::max(predicted * (1.0 - predicted), 0.0) / m);
    const double diff = row.realized_freq - predicted;
    if (row.standard_error > 0.0) {
        row.z = diff / row.standard_error;
    } else {
        row.z = diff == 0.0 ? 0.0 : (diff > 0.0 ? inf : -inf);
    }
    return row;
}

DiscrepancyReport compare_to_prediction(const SimulationTally& tally, const RoundOutcomeTable& table) {
    if (tally.n != table.n) throw InvalidInput("tally and prediction have different game lengths");
    DiscrepancyReport rep;
    rep.n = tally.n;
    rep.samples = tally.runs;
    rep.master_seed = tally.master_seed;
    std::uint64_t counted = 0;
    for (int r = 1; r <= tally.n; ++r) {
        const auto i = static_cast<std::size_t>(r - 1);
        const auto& p = table.round(r);
        rep.rows.push_back(make_discrepancy_row(r, Outcome::win, tally.win[i], tally.runs, p.pw));
        rep.rows.push_back(
            make_discrepancy_row(r, Outcome::false_positive, tally.false_positive[i], tally.runs, p.pfp));
        rep.rows.push_back(
            make_discrepancy_row(r, Outcome::false_negative, tally.false_negative[i], tally.runs, p.pfn));
        if (r < tally.n) {
            rep.rows.push_back(make_discrepancy_row(r, Outcome::cont, tally.continued(r), tally.runs, p.pc));
        }
        counted += tally.win[i] + tally.false_positive[i] + tally.false_negative[i];
    }
    rep.rows.push_back(make_discrepancy_row(0, Outcome::win, tally.total_wins(), tally.runs, table.pw_total));
    for (const auto& row : rep.rows) rep.max_abs_z = std::max(rep.max_abs_z, std::abs(row.z));
    rep.insufficient_runs = tally.runs == 0 || counted != tally.runs;
    return rep;
}

}  // namespace maxstop
