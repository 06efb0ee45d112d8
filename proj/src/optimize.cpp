#include "maxstop/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxstop/error.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/strategy.hpp"

namespace maxstop {

std::vector<double> project_nonincreasing(std::span<const double> x, double lo, double hi) {
    // Pool adjacent violators for a nonincreasing fit, then clamp. Clamping
    // an isotonic fit to a common box gives the projection onto the
    // intersection.
    struct Block {
        double sum;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(x.size());
    for (double v : x) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1) {
            const auto& cur = blocks.back();
            const auto& prev = blocks[blocks.size() - 2];
            if (prev.sum / static_cast<double>(prev.count) >= cur.sum / static_cast<double>(cur.count)) {
                break;
            }
            const Block merged{prev.sum + cur.sum, prev.count + cur.count};
            blocks.pop_back();
            blocks.back() = merged;
        }
    }
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& b : blocks) {
        const double mean = std::clamp(b.sum / static_cast<double>(b.count), lo, hi);
        out.insert(out.end(), b.count, mean);
    }
    return out;
}

namespace {

struct Evaluator {
    int n;
    int evaluations = 0;

    CutoffVector full(const std::vector<double>& x) const {
        std::vector<double> k(x);
        k.push_back(0.0);
        return CutoffVector(std::move(k));
    }

    double value(const std::vector<double>& x) {
        ++evaluations;
        return total_win_probability(full(x));
    }

    std::vector<double> gradient(const std::vector<double>& x) const {
        return total_win_probability_gradient(full(x));
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double stationarity(const std::vector<double>& x, const std::vector<double>& g) {
    std::vector<double> trial(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + g[i];
    const auto p = project_nonincreasing(trial);
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) norm = std::max(norm, std::abs(p[i] - x[i]));
    return norm;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

}  // namespace

OptimizationResult optimize_cutoffs(int n, const OptimizeOptions& options) {
    if (n < 2) throw InvalidInput("optimization needs n >= 2");
    const CutoffVector init = options.init ? *options.init : approx_cutoffs(n);
    if (init.n() != n) throw InvalidInput("initial cutoff vector length does not match n");

    const std::size_t dim = static_cast<std::size_t>(n - 1);
    Evaluator eval{n};
    std::vector<double> x = project_nonincreasing(init.values().first(dim));
    double f = eval.value(x);
    std::vector<double> g = eval.gradient(x);

    // Inverse-Hessian approximation for minimizing -PW, stored dense.
    std::vector<double> h(dim * dim, 0.0);
    const auto reset_h = [&](double scale) {
        std::fill(h.begin(), h.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) h[i * dim + i] = scale;
    };
    reset_h(1.0);
    bool h_is_identity = true;

    OptimizationResult result{init, f, 0, eval.evaluations, false, stationarity(x, g)};
    constexpr double armijo = 1e-4;
    constexpr double noise = 8.0 * std::numeric_limits<double>::epsilon();

    int it = 0;
    while (eval.evaluations < options.max_evaluations) {
        const double pg = stationarity(x, g);
        if (pg <= options.tol) {
            result.converged = true;
            break;
        }
        ++it;

        std::vector<double> d(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < dim; ++j) s += h[i * dim + j] * g[j];
            d[i] = s;
        }
        if (dot(d, g) <= 0.0) {
            reset_h(1.0);
            h_is_identity = true;
            d = g;
        }

        double t = h_is_identity ? std::min(1.0, 0.1 / std::max(inf_norm(d), 1e-300)) : 1.0;
        bool accepted = false;
        std::vector<double> x_new;
        std::vector<double> g_new;
        double f_new = f;
        for (int bt = 0; bt < 60 && eval.evaluations < options.max_evaluations; ++bt, t *= 0.5) {
            std::vector<double> trial(dim);
            for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] + t * d[i];
            x_new = project_nonincreasing(trial);
            std::vector<double> step(dim);
            for (std::size_t i = 0; i < dim; ++i) step[i] = x_new[i] - x[i];
            const double predicted = dot(g, step);
            if (predicted <= 0.0 && inf_norm(step) == 0.0) break;
            f_new = eval.value(x_new);
            if (f_new >= f + armijo * predicted) {
                g_new = eval.gradient(x_new);
                accepted = true;
                break;
            }
            // Near the optimum the gain drops below rounding noise in f;
            // then a step that shrinks the gradient is taken on its own.
            if (f_new >= f - noise * std::abs(f)) {
                auto g_try = eval.gradient(x_new);
                if (stationarity(x_new, g_try) < pg) {
                    g_new = std::move(g_try);
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            if (h_is_identity) break;  // stalled on a steepest-ascent step
            reset_h(1.0);
            h_is_identity = true;
            continue;
        }

        std::vector<double> s(dim);
        std::vector<double> y(dim);  // gradient change of -PW
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = -(g_new[i] - g[i]);
        }
        const double sy = dot(s, y);
        if (sy > 0.0 && sy > 1e-18 * std::sqrt(dot(s, s) * dot(y, y))) {
            if (h_is_identity) reset_h(sy / dot(y, y));
            // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
            const double rho = 1.0 / sy;
            std::vector<double> hy(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < dim; ++j) acc += h[i * dim + j] * y[j];
                hy[i] = acc;
            }
            const double yhy = dot(y, hy);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    h[i * dim + j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) +
                                      (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
            h_is_identity = false;
        }
        x = std::move(x_new);
        g = std::move(g_new);
        f = f_new;
    }

    result.cutoffs = eval.full(x);
    result.pw_total = total_win_probability(result.cutoffs);
    result.iterations = it;
    result.evaluations = eval.evaluations;
    result.gradient_norm = stationarity(x, g);
    if (!result.converged) result.converged = result.gradient_norm <= options.tol;
    return result;
}

}  // namespace maxstop
