#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxstop/cutoff_vector.hpp"

namespace maxstop {

enum class StrategyKind { naive, gm, single_k, approx, optimal, explicit_cutoffs };

/// A named cutoff generator for a game of n draws.
struct StrategySpec {
    StrategyKind kind = StrategyKind::naive;
    int n = 0;
    std::optional<CutoffVector> cutoffs;  // required for explicit_cutoffs
    std::optional<double> fixed_k;        // single_k only; absent means the optimal k
};

[[nodiscard]] std::string_view strategy_name(StrategyKind kind) noexcept;

/// Accepts naive, gm, single-k, approx, optimal, explicit (and a few aliases).
[[nodiscard]] StrategyKind parse_strategy_kind(std::string_view name);

/// k_r = (1 - 1/n) + log((n-r)/n)/n for r < n, clamped at 0; k_n = 0.
[[nodiscard]] CutoffVector approx_cutoffs(int n);

/// (k, ..., k, 0) of length n.
[[nodiscard]] CutoffVector single_k_cutoffs(int n, double k);

struct SingleKOptimum {
    double k = 0.0;
    double pw = 0.0;
};

/// Best identical cutoff for n >= 2, located as the root of the derivative of
/// the closed-form total on [0, 1).
[[nodiscard]] SingleKOptimum optimal_single_k(int n);

/// Deterministic for a fixed spec; `optimal` runs optimize_cutoffs with
/// default options.
[[nodiscard]] CutoffVector cutoffs_for(const StrategySpec& spec);

}  // namespace maxstop
