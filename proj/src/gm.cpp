#include "maxstop/gm.hpp"

#include <cmath>

#include "maxstop/error.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/roots.hpp"

namespace maxstop::gm {

namespace {

void check_length(int n) {
    if (n < 1) throw InvalidInput("game length must be at least 1");
}

// sum_{j=1..m} C(m,j) x^j / j by successive term ratios.
double scaled_continuation_sum(int m, double x) {
    double term = m * x;
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) {
        sum += term;
        if (j < m) {
            term *= (static_cast<double>(m - j) / (j + 1)) * x * (static_cast<double>(j) / (j + 1));
        }
    }
    return sum;
}

}  // namespace

double indifference_residual(int remaining, double k) {
    if (remaining < 1) throw InvalidInput("remaining rounds must be at least 1");
    const int m = remaining - 1;
    return scaled_continuation_sum(m, (1.0 - k) / k) - 1.0;
}

double indifference_number(int remaining) {
    if (remaining < 1) throw InvalidInput("remaining rounds must be at least 1");
    if (remaining == 1) return 0.0;
    // The residual is decreasing in k, nonnegative at 0.5 and -> -1 as k -> 1.
    const auto root = find_root([remaining](double k) { return indifference_residual(remaining, k); },
                                0.5, 1.0 - 1e-15, 1e-13);
    return root.x;
}

IndifferenceTable indifference_table(int max_i) {
    check_length(max_i);
    IndifferenceTable t;
    t.max_i = max_i;
    t.values.reserve(static_cast<std::size_t>(max_i));
    for (int i = 1; i <= max_i; ++i) t.values.push_back(indifference_number(i));
    return t;
}

CutoffVector gm_cutoffs(int n) {
    check_length(n);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) k[static_cast<std::size_t>(j - 1)] = indifference_number(n - j + 1);
    return CutoffVector(std::move(k));
}

CutoffVector naive_cutoffs(int n) {
    check_length(n);
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) k[static_cast<std::size_t>(j - 1)] = 1.0 - 1.0 / (n - j + 1);
    return CutoffVector(std::move(k));
}

double round_win_probability(const CutoffVector& k, int r) {
    const int n = k.n();
    if (r < 1 || r > n) throw InvalidInput("round outside [1, n]");
    if (!k.monotone()) throw InvalidInput("classical win probability requires nonincreasing cutoffs");
    if (r == 1) return 1.0 / n - ipow(k.at_round(1), n) / n;
    const int s = r - 1;
    double lower = 0.0;
    double full = 0.0;
    for (int j = 1; j <= s; ++j) {
        lower += ipow(k.at_round(j), s);
        full += ipow(k.at_round(j), n);
    }
    return lower / (static_cast<double>(s) * (n - s)) - full / (static_cast<double>(n) * (n - s)) -
           ipow(k.at_round(r), n) / n;
}

std::vector<double> round_win_probabilities(const CutoffVector& k) {
    std::vector<double> p(static_cast<std::size_t>(k.n()));
    for (int r = 1; r <= k.n(); ++r) p[static_cast<std::size_t>(r - 1)] = round_win_probability(k, r);
    return p;
}

double total_win_probability(const CutoffVector& k) {
    double total = 0.0;
    for (double p : round_win_probabilities(k)) total += p;
    return total;
}

PoissonSeries single_k_limit_series(double mu) {
    if (!(mu >= 0.0)) throw InvalidInput("series parameter must be nonnegative");
    PoissonSeries s;
    if (mu == 0.0) return s;
    double poisson = std::exp(-mu);  // e^-mu mu^i / i!
    for (int i = 1; i < 100000; ++i) {
        poisson *= mu / i;
        const double term = poisson / i;
        s.value += term;
        s.terms = i;
        s.last_term = term;
        if (term < 1e-16 * s.value) break;
    }
    return s;
}

Asymptote single_k_asymptote() {
    const auto slope = [](double mu) {
        return -std::expm1(-mu) / mu - single_k_limit_series(mu).value;
    };
    const auto root = find_root(slope, 0.5, 5.0, 1e-14);
    Asymptote a;
    a.mu = root.x;
    a.series = single_k_limit_series(a.mu);
    a.value = a.series.value;
    return a;
}

SingleKThenZero best_single_k_then_zero(int n) {
    if (n < 2) throw InvalidInput("single-k-then-zero search needs n >= 2");
    SingleKThenZero best;
    std::vector<double> k(static_cast<std::size_t>(n), 0.0);
    for (int t = 1; t < n; ++t) {
        const auto objective = [&](double kk) {
            for (int j = 0; j < t; ++j) k[static_cast<std::size_t>(j)] = kk;
            return gm::total_win_probability(CutoffVector(k));
        };
        const auto m = maximize_scalar(objective, 0.0, 1.0, 1e-10);
        if (m.fx > best.pwin) best = {t, m.x, m.fx};
    }
    return best;
}

}  // namespace maxstop::gm
