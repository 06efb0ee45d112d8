#pragma once

#include <optional>
#include <span>
#include <vector>

#include "maxstop/cutoff_vector.hpp"

namespace maxstop {

struct OptimizeOptions {
    std::optional<CutoffVector> init;  // defaults to approx_cutoffs(n)
    double tol = 1e-10;                // projected-gradient infinity norm
    int max_evaluations = 10000;       // objective+gradient evaluations
};

struct OptimizationResult {
    CutoffVector cutoffs;
    double pw_total = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
};

/**
 * Maximizes the exact total win probability over k_1..k_{n-1} subject to
 * 1 >= k_1 >= ... >= k_{n-1} >= 0, k_n = 0.
 *
 * Projected quasi-Newton: BFGS directions on the analytic gradient, each trial
 * point projected onto the feasible set (isotonic regression then clamping),
 * Armijo backtracking. Stationarity is measured as the infinity norm of
 * P(x + g) - x, which is the plain gradient at interior points. When the
 * budget runs out the best point is still returned with converged = false.
 */
[[nodiscard]] OptimizationResult optimize_cutoffs(int n, const OptimizeOptions& options = {});

/// Euclidean projection onto {lo <= x_m <= ... <= x_1 <= hi}.
[[nodiscard]] std::vector<double> project_nonincreasing(std::span<const double> x, double lo = 0.0,
                                                        double hi = 1.0);

}  // namespace maxstop
