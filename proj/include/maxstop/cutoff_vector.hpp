#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace maxstop {

enum class Monotonicity {
    strict,      // non-monotone vectors are rejected
    permissive,  // accepted with a warning; closed forms are no longer exact
};

/**
 * Decision numbers k_1..k_n for a game of n draws.
 *
 * A valid vector has every entry in [0,1], is nonincreasing, and ends in 0
 * so the last draw is always accepted. Entries equal to 1 are legal (that
 * round never accepts) but are reported through warnings().
 */
class CutoffVector {
public:
    explicit CutoffVector(std::vector<double> k, Monotonicity mode = Monotonicity::strict);

    [[nodiscard]] int n() const noexcept { return static_cast<int>(k_.size()); }

    /// 1-based access matching round numbering.
    [[nodiscard]] double at_round(int r) const { return k_[static_cast<std::size_t>(r - 1)]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return k_; }

    /// False only for a permissive vector that violated monotonicity.
    [[nodiscard]] bool monotone() const noexcept { return monotone_; }

    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    friend bool operator==(const CutoffVector& a, const CutoffVector& b) { return a.k_ == b.k_; }

private:
    std::vector<double> k_;
    bool monotone_ = true;
    std::vector<std::string> warnings_;
};

/// Parses one decision number per line (r = 1..n); blank lines and lines
/// starting with '#' are skipped. Errors name the offending line.
[[nodiscard]] CutoffVector parse_cutoff_text(const std::string& text,
                                             Monotonicity mode = Monotonicity::strict);

[[nodiscard]] CutoffVector read_cutoff_file(const std::string& path,
                                            Monotonicity mode = Monotonicity::strict);

}  // namespace maxstop
