#pragma once

#include <string_view>
#include <vector>

#include "maxstop/cutoff_vector.hpp"

namespace maxstop {

/// How a round can end. `cont` is not terminal: the game is still winnable.
enum class Outcome { win, false_positive, false_negative, cont };

[[nodiscard]] std::string_view outcome_code(Outcome o) noexcept;  // W, FP, FN, C

/// Integer power by repeated squaring; e >= 0.
[[nodiscard]] double ipow(double x, int e) noexcept;

// Structure of the continuation polynomial PC(n,r): a leading product of all
// cutoffs up to r minus r correction monomials. Correction i carries
// coefficient (n-r)/((n-r+i-1)(n-r+i)) and raises k_j to the power returned
// by `continuation_exponent(i, j, n, r)`. Every monomial has total degree n.

/// n-r+i on the diagonal, 1 above it, 0 below. Requires 1 <= i, j <= r.
[[nodiscard]] int continuation_exponent(int i, int j, int n, int r) noexcept;

/// Requires 1 <= i <= r < n.
[[nodiscard]] double continuation_coefficient(int i, int n, int r) noexcept;

// Per-round probabilities for the cutoff policy `k` over n = k.n() draws.
// Rounds are 1-based. The last cutoff is 0, so the game always ends by
// round n.

/// Probability the game is still winnable after round r (no acceptance yet,
/// maximum not yet passed). PC(n,0) = 1 and PC(n,n) = 0.
[[nodiscard]] double continue_probability(const CutoffVector& k, int r);

/// The maximum sits at round r below its cutoff: k_r^n / n.
[[nodiscard]] double false_negative_probability(const CutoffVector& k, int r);

/// PC(n,r-1)/(n-r+1) - PFN(n,r).
[[nodiscard]] double win_probability_at_round(const CutoffVector& k, int r);

/// Whatever leaves the continuation mass at round r without a win or a
/// false negative; zero at r = n.
[[nodiscard]] double false_positive_probability_at_round(const CutoffVector& k, int r);

struct RoundOutcome {
    double pw = 0.0;
    double pfp = 0.0;
    double pfn = 0.0;
    double pc = 0.0;

    [[nodiscard]] double get(Outcome o) const noexcept;
};

struct RoundOutcomeTable {
    int n = 0;
    std::vector<RoundOutcome> rows;  // rows[r-1] for round r
    double pw_total = 0.0;
    double pfp_total = 0.0;
    double pfn_total = 0.0;

    [[nodiscard]] const RoundOutcome& round(int r) const { return rows.at(static_cast<std::size_t>(r - 1)); }
};

/**
 * All four probabilities for every round plus totals, in O(n^2).
 *
 * The raw values are checked for conservation (each row sums to the previous
 * continuation mass) before being clamped to [0,1]; a violation throws
 * std::logic_error because it can only come from a formula defect.
 */
[[nodiscard]] RoundOutcomeTable outcome_table(const CutoffVector& k);

/// Total win probability only; same arithmetic as outcome_table without the
/// per-row bookkeeping.
[[nodiscard]] double total_win_probability(const CutoffVector& k);

/// Partial derivatives of the total win probability with respect to
/// k_1..k_{n-1} (k_n is pinned at 0). Size n-1.
[[nodiscard]] std::vector<double> total_win_probability_gradient(const CutoffVector& k);

/// H_m = 1 + 1/2 + ... + 1/m by direct summation; H_0 = 0.
[[nodiscard]] double harmonic_number(int m);

/// Win probability at round r under cutoffs (k, k, ..., k, 0).
[[nodiscard]] double single_k_round_win_probability(int n, int r, double k);

/// Total win probability under cutoffs (k, ..., k, 0); k in [0,1).
/// Evaluated as sum_{m=1..n} k^(n-m)/m - k^n H_{n-1}, which stays finite as
/// k -> 0 (the limit is 1/n).
[[nodiscard]] double single_k_win_probability(int n, double k);

/// d/dk of single_k_win_probability.
[[nodiscard]] double single_k_win_probability_derivative(int n, double k);

}  // namespace maxstop
