#pragma once

#include <cstdint>

namespace maxstop {

/// SplitMix64 output function.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based uniform source: the value for (run, draw) is a pure function
 * of (master seed, run, draw). Each run is a SplitMix64 sequence whose
 * starting state is a hash of the seed and run index, so any run can be
 * regenerated in isolation and the first n draws of a run are the same for
 * every game length.
 *
 * Values are ((bits >> 12) + 0.5) * 2^-52: strictly inside (0,1) and exact
 * odd multiples of 2^-53 (52 random bits, so the half-unit offset never
 * needs a 54th mantissa bit).
 */
class CounterRng {
public:
    constexpr explicit CounterRng(std::uint64_t master_seed) noexcept
        : key_(mix64(master_seed ^ 0x6A09E667F3BCC909ULL)) {}

    [[nodiscard]] constexpr std::uint64_t run_state(std::uint64_t run) const noexcept {
        return mix64(key_ ^ mix64(run));
    }

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t run, std::uint64_t draw) const noexcept {
        return mix64(run_state(run) + draw * 0x9E3779B97F4A7C15ULL);
    }

    [[nodiscard]] static constexpr double to_unit(std::uint64_t bits) noexcept {
        return (static_cast<double>(bits >> 12) + 0.5) * 0x1p-52;
    }

    [[nodiscard]] constexpr double uniform(std::uint64_t run, std::uint64_t draw) const noexcept {
        return to_unit(bits(run, draw));
    }

    /// Fills out[0..size) with draws 0..size-1 of `run`.
    template <class Span>
    constexpr void fill(std::uint64_t run, Span&& out) const noexcept {
        const std::uint64_t state = run_state(run);
        std::uint64_t d = 0;
        for (auto& v : out) {
            v = to_unit(mix64(state + d * 0x9E3779B97F4A7C15ULL));
            ++d;
        }
    }

private:
    std::uint64_t key_;
};

}  // namespace maxstop
