#pragma once

#include <vector>

#include "maxstop/cutoff_vector.hpp"

namespace maxstop::gm {

// Quantities from the classical full-information analysis, which treats the
// draws after a continuation as unconditioned uniforms.

/**
 * Indifference number for `remaining` rounds left, counting the current one.
 *
 * With m = remaining - 1 later draws, k solves
 *     sum_{j=1..m} C(m,j) k^(m-j) (1-k)^j / j = k^m
 * (accepting k now wins with probability k^m; passing it and playing on wins
 * with the left-hand side). Divided through by k^m this becomes
 *     sum_j C(m,j) x^j / j = 1,  x = (1-k)/k,
 * whose terms are all positive and follow the ratio
 *     u_{j+1}/u_j = (m-j)/(j+1) * x * j/(j+1),
 * so no factorial or large binomial is ever formed. One remaining round
 * gives 0; two give exactly 0.5.
 */
[[nodiscard]] double indifference_number(int remaining);

/// sum_j C(m,j) x^j / j - 1 at cutoff k, m = remaining-1; zero at the root.
[[nodiscard]] double indifference_residual(int remaining, double k);

struct IndifferenceTable {
    int max_i = 0;
    std::vector<double> values;  // values[i-1] = indifference_number(i)
};

[[nodiscard]] IndifferenceTable indifference_table(int max_i);

/// Round j uses indifference_number(n-j+1); the last entry is 0.
[[nodiscard]] CutoffVector gm_cutoffs(int n);

/// k_j = 1 - 1/(n-j+1).
[[nodiscard]] CutoffVector naive_cutoffs(int n);

/**
 * Classical per-round win probability (rounds 1..n):
 *   P(1)   = 1/n - k_1^n/n
 *   P(r+1) = sum_{j<=r} k_j^r/(r(n-r)) - sum_{j<=r} k_j^n/(n(n-r)) - k_{r+1}^n/n
 * Only defined for monotone cutoffs; a permissive non-monotone vector is
 * rejected.
 */
[[nodiscard]] double round_win_probability(const CutoffVector& k, int r);

[[nodiscard]] std::vector<double> round_win_probabilities(const CutoffVector& k);

[[nodiscard]] double total_win_probability(const CutoffVector& k);

struct PoissonSeries {
    double value = 0.0;
    int terms = 0;          // number of terms included
    double last_term = 0.0;
};

/// sum_{i>=1} e^-mu mu^i / (i! i), stopped once a term drops below 1e-16
/// of the running sum.
[[nodiscard]] PoissonSeries single_k_limit_series(double mu);

struct Asymptote {
    double mu = 0.0;
    double value = 0.0;
    PoissonSeries series;  // truncation report at the maximizer
};

/// Maximizes the series over mu > 0: root of its derivative
/// (1 - e^-mu)/mu - S(mu) on a sign-changing bracket.
[[nodiscard]] Asymptote single_k_asymptote();

struct SingleKThenZero {
    int t = 0;        // rounds that use k before switching to 0
    double k = 0.0;
    double pwin = 0.0;
};

/// Grid over integer t of the classical total win probability for cutoffs
/// (k x t, 0 x (n-t)), each t maximized over k.
[[nodiscard]] SingleKThenZero best_single_k_then_zero(int n);

}  // namespace maxstop::gm
