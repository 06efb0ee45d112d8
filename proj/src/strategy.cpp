#include "maxstop/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "maxstop/error.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/optimize.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/roots.hpp"

namespace maxstop {

std::string_view strategy_name(StrategyKind kind) noexcept {
    switch (kind) {
        case StrategyKind::naive: return "naive";
        case StrategyKind::gm: return "gm";
        case StrategyKind::single_k: return "single-k";
        case StrategyKind::approx: return "approx";
        case StrategyKind::optimal: return "optimal";
        case StrategyKind::explicit_cutoffs: return "explicit";
    }
    return "?";
}

StrategyKind parse_strategy_kind(std::string_view name) {
    if (name == "naive") return StrategyKind::naive;
    if (name == "gm") return StrategyKind::gm;
    if (name == "single-k" || name == "single_k" || name == "single_k_optimal") {
        return StrategyKind::single_k;
    }
    if (name == "approx" || name == "approximated") return StrategyKind::approx;
    if (name == "optimal") return StrategyKind::optimal;
    if (name == "explicit") return StrategyKind::explicit_cutoffs;
    throw InvalidInput("unknown strategy '" + std::string(name) +
                       "' (expected naive, gm, single-k, approx, optimal or explicit)");
}

CutoffVector approx_cutoffs(int n) {
    if (n < 2) throw InvalidInput("approximated cutoffs need n >= 2");
    std::vector<double> k(static_cast<std::size_t>(n), 0.0);
    const double inv = 1.0 / n;
    for (int r = 1; r < n; ++r) {
        const double v = (1.0 - inv) + inv * std::log(static_cast<double>(n - r) / n);
        k[static_cast<std::size_t>(r - 1)] = std::max(v, 0.0);
    }
    return CutoffVector(std::move(k));
}

CutoffVector single_k_cutoffs(int n, double k) {
    if (n < 1) throw InvalidInput("game length must be at least 1");
    std::vector<double> v(static_cast<std::size_t>(n), k);
    v.back() = 0.0;
    return CutoffVector(std::move(v));
}

SingleKOptimum optimal_single_k(int n) {
    if (n < 2) throw InvalidInput("optimal single k needs n >= 2");
    // Derivative is 1/(n-1) at k = 0 and tends to -(n-1) at k = 1.
    const double hi = std::nextafter(1.0, 0.0);
    const auto root = find_root([n](double k) { return single_k_win_probability_derivative(n, k); },
                                0.0, hi, 1e-13);
    return {root.x, single_k_win_probability(n, root.x)};
}

CutoffVector cutoffs_for(const StrategySpec& spec) {
    const int n = spec.n;
    switch (spec.kind) {
        case StrategyKind::naive: return gm::naive_cutoffs(n);
        case StrategyKind::gm: return gm::gm_cutoffs(n);
        case StrategyKind::approx: return approx_cutoffs(n);
        case StrategyKind::single_k:
            if (spec.fixed_k) return single_k_cutoffs(n, *spec.fixed_k);
            if (n == 1) return single_k_cutoffs(1, 0.0);
            return single_k_cutoffs(n, optimal_single_k(n).k);
        case StrategyKind::optimal:
            if (n == 1) return CutoffVector({0.0});
            return optimize_cutoffs(n).cutoffs;
        case StrategyKind::explicit_cutoffs:
            if (!spec.cutoffs) throw InvalidInput("explicit strategy requires a cutoff vector");
            if (n != 0 && spec.cutoffs->n() != n) {
                throw InvalidInput("explicit cutoff vector length does not match n");
            }
            return *spec.cutoffs;
    }
    throw InvalidInput("unhandled strategy kind");
}

}  // namespace maxstop
