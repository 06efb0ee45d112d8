#pragma once

#include <functional>

namespace maxstop {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/**
 * Bracketed root of f on [lo, hi] (f(lo) and f(hi) of opposite sign, or one
 * of them zero). Bisection/secant/inverse-quadratic hybrid (Brent): every
 * step keeps a sign-changing bracket, so convergence is guaranteed; the
 * bracket shrinks below `x_tol` on success.
 *
 * Throws InvalidInput when the endpoints do not bracket a root.
 */
[[nodiscard]] RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                                   double x_tol = 1e-14, int max_iter = 200);

struct MaximumResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Maximizer of a unimodal f on [lo, hi] by golden-section steps with
/// parabolic interpolation. `x_tol` is limited below by ~sqrt(eps)*|x|
/// because only function values are used.
[[nodiscard]] MaximumResult maximize_scalar(const std::function<double(double)>& f, double lo,
                                            double hi, double x_tol = 1e-10, int max_iter = 500);

}  // namespace maxstop
