#include "maxstop/probability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxstop/error.hpp"

namespace maxstop {

namespace {

constexpr double row_conservation_tol = 1e-12;
constexpr double total_conservation_tol = 1e-10;

void check_round(const CutoffVector& k, int r, int lo) {
    if (r < lo || r > k.n()) {
        std::ostringstream os;
        os << "round " << r << " outside [" << lo << ", " << k.n() << "]";
        throw InvalidInput(os.str());
    }
}

// PC(n,r) for 1 <= r <= n-1. Walks i downward so the product of k_{i+1..r}
// is available without division.
double continuation_raw(std::span<const double> k, int n, int r) {
    double suffix = 1.0;
    double correction = 0.0;
    for (int i = r; i >= 1; --i) {
        const double ki = k[static_cast<std::size_t>(i - 1)];
        correction += continuation_coefficient(i, n, r) * ipow(ki, n - r + i) * suffix;
        suffix *= ki;
    }
    return suffix - correction;
}

// PC(n,0..n), unclamped, in O(n^2). Sweeping r downward raises every
// exponent n-r+i by one per step, so each power is one multiplication.
std::vector<double> continuation_profile(const CutoffVector& k) {
    const int n = k.n();
    const auto kv = k.values();
    std::vector<double> pc(static_cast<std::size_t>(n) + 1, 0.0);
    pc[0] = 1.0;
    if (n < 2) return pc;
    std::vector<double> power(static_cast<std::size_t>(n - 1));  // k_i^(n-r+i)
    for (int i = 1; i < n; ++i) power[static_cast<std::size_t>(i - 1)] = ipow(kv[static_cast<std::size_t>(i - 1)], i + 1);
    for (int r = n - 1; r >= 1; --r) {
        double suffix = 1.0;
        double correction = 0.0;
        for (int i = r; i >= 1; --i) {
            const auto ui = static_cast<std::size_t>(i - 1);
            correction += continuation_coefficient(i, n, r) * power[ui] * suffix;
            suffix *= kv[ui];
        }
        pc[static_cast<std::size_t>(r)] = suffix - correction;
        for (int i = 1; i < r; ++i) power[static_cast<std::size_t>(i - 1)] *= kv[static_cast<std::size_t>(i - 1)];
    }
    return pc;
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

std::string_view outcome_code(Outcome o) noexcept {
    switch (o) {
        case Outcome::win: return "W";
        case Outcome::false_positive: return "FP";
        case Outcome::false_negative: return "FN";
        case Outcome::cont: return "C";
    }
    return "?";
}

double ipow(double x, int e) noexcept {
    double result = 1.0;
    while (e > 0) {
        if (e & 1) result *= x;
        x *= x;
        e >>= 1;
    }
    return result;
}

int continuation_exponent(int i, int j, int n, int r) noexcept {
    if (i == j) return n - r + i;
    return i < j ? 1 : 0;
}

double continuation_coefficient(int i, int n, int r) noexcept {
    const double m = n - r;
    return m / ((m + i - 1) * (m + i));
}

double RoundOutcome::get(Outcome o) const noexcept {
    switch (o) {
        case Outcome::win: return pw;
        case Outcome::false_positive: return pfp;
        case Outcome::false_negative: return pfn;
        case Outcome::cont: return pc;
    }
    return 0.0;
}

double continue_probability(const CutoffVector& k, int r) {
    check_round(k, r, 0);
    if (r == 0) return 1.0;
    if (r == k.n()) return 0.0;
    return clamp01(continuation_raw(k.values(), k.n(), r));
}

double false_negative_probability(const CutoffVector& k, int r) {
    check_round(k, r, 1);
    return ipow(k.at_round(r), k.n()) / k.n();
}

double win_probability_at_round(const CutoffVector& k, int r) {
    check_round(k, r, 1);
    const int n = k.n();
    const double pc_prev = r == 1 ? 1.0 : continuation_raw(k.values(), n, r - 1);
    return clamp01(pc_prev / (n - r + 1) - ipow(k.at_round(r), n) / n);
}

double false_positive_probability_at_round(const CutoffVector& k, int r) {
    check_round(k, r, 1);
    const int n = k.n();
    if (r == n) return 0.0;
    const double pc_prev = r == 1 ? 1.0 : continuation_raw(k.values(), n, r - 1);
    const double pfn = ipow(k.at_round(r), n) / n;
    const double pw = pc_prev / (n - r + 1) - pfn;
    return clamp01((pc_prev - (pw + pfn)) - continuation_raw(k.values(), n, r));
}

RoundOutcomeTable outcome_table(const CutoffVector& k) {
    const int n = k.n();
    const auto pc = continuation_profile(k);

    RoundOutcomeTable table;
    table.n = n;
    table.rows.resize(static_cast<std::size_t>(n));
    double sum_pw = 0.0;
    double sum_pfp = 0.0;
    double sum_pfn = 0.0;
    for (int r = 1; r <= n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        RoundOutcome row;
        row.pfn = ipow(k.at_round(r), n) / n;
        row.pw = pc[ur - 1] / (n - r + 1) - row.pfn;
        row.pc = pc[ur];
        row.pfp = r == n ? 0.0 : (pc[ur - 1] - (row.pw + row.pfn)) - row.pc;

        const double residual = row.pw + row.pfp + row.pfn + row.pc - pc[ur - 1];
        if (!(std::abs(residual) <= row_conservation_tol)) {
            std::ostringstream os;
            os << "conservation violated at round " << r << " (residual " << residual << ")";
            throw std::logic_error(os.str());
        }
        sum_pw += row.pw;
        sum_pfp += row.pfp;
        sum_pfn += row.pfn;
        table.rows[ur - 1] = row;
    }
    const double total = sum_pw + sum_pfp + sum_pfn;
    if (!(std::abs(total - 1.0) <= total_conservation_tol)) {
        std::ostringstream os;
        os << "outcome probabilities sum to " << total << ", not 1";
        throw std::logic_error(os.str());
    }

    for (auto& row : table.rows) {
        row.pw = clamp01(row.pw);
        row.pfp = clamp01(row.pfp);
        row.pfn = clamp01(row.pfn);
        row.pc = clamp01(row.pc);
        table.pw_total += row.pw;
        table.pfp_total += row.pfp;
        table.pfn_total += row.pfn;
    }
    return table;
}

double total_win_probability(const CutoffVector& k) {
    const int n = k.n();
    const auto pc = continuation_profile(k);
    double total = 0.0;
    for (int r = 1; r <= n; ++r) {
        total += pc[static_cast<std::size_t>(r - 1)] / (n - r + 1) - ipow(k.at_round(r), n) / n;
    }
    return total;
}

std::vector<double> total_win_probability_gradient(const CutoffVector& k) {
    // PW(n) = 1/n + sum_{s=1}^{n-1} PC(n,s)/(n-s) - sum_r k_r^n/n. For l <= s,
    //   dPC(s)/dk_l = Q(l+1..s) * [Q(1..l-1) - g_l e_l k_l^(e_l-1) - B_l]
    // with e_i = n-s+i, Q the cutoff product over a range, and
    //   B_l = sum_{i<l} g_i k_i^(e_i) Q(i+1..l-1).
    const int n = k.n();
    const auto kv = k.values();
    std::vector<double> grad(static_cast<std::size_t>(std::max(n - 1, 0)), 0.0);
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 1.0);
    for (int s = 1; s < n; ++s) {
        suffix[static_cast<std::size_t>(s)] = 1.0;  // Q(s+1..s)
        for (int l = s - 1; l >= 1; --l) {
            suffix[static_cast<std::size_t>(l)] =
                suffix[static_cast<std::size_t>(l) + 1] * kv[static_cast<std::size_t>(l)];
        }
        const double weight = 1.0 / (n - s);
        double prefix = 1.0;
        double carried = 0.0;
        for (int l = 1; l <= s; ++l) {
            const double kl = kv[static_cast<std::size_t>(l - 1)];
            const int e = n - s + l;
            const double g = continuation_coefficient(l, n, s);
            const double d = suffix[static_cast<std::size_t>(l)] *
                             (prefix - g * e * ipow(kl, e - 1) - carried);
            grad[static_cast<std::size_t>(l - 1)] += weight * d;
            carried = carried * kl + g * ipow(kl, e);
            prefix *= kl;
        }
    }
    for (int l = 1; l < n; ++l) {
        grad[static_cast<std::size_t>(l - 1)] -= ipow(kv[static_cast<std::size_t>(l - 1)], n - 1);
    }
    return grad;
}

double harmonic_number(int m) {
    if (m < 0) throw InvalidInput("harmonic number of a negative index");
    double h = 0.0;
    for (int j = m; j >= 1; --j) h += 1.0 / j;
    return h;
}

namespace {

void check_single_k(int n, double k) {
    if (n < 1) throw InvalidInput("game length must be at least 1");
    if (!(k >= 0.0) || !(k < 1.0)) {
        std::ostringstream os;
        os << "single cutoff k = " << k << " must lie in [0,1)";
        throw InvalidInput(os.str());
    }
}

}  // namespace

double single_k_round_win_probability(int n, int r, double k) {
    check_single_k(n, k);
    if (r < 1 || r > n) throw InvalidInput("round outside [1, n]");
    const double kn = ipow(k, n);
    const double tail = r == n ? kn / n : 0.0;
    return (ipow(k, r - 1) - kn) / (n - r + 1) + tail;
}

double single_k_win_probability(int n, double k) {
    check_single_k(n, k);
    double sum = 0.0;
    double power = 1.0;  // k^(n-m), starting at m = n
    for (int m = n; m >= 1; --m) {
        sum += power / m;
        power *= k;
    }
    // power == k^n here
    return sum - power * harmonic_number(n - 1);
}

double single_k_win_probability_derivative(int n, double k) {
    check_single_k(n, k);
    double sum = 0.0;
    double power = 1.0;  // k^(n-m-1), starting at m = n-1
    for (int m = n - 1; m >= 1; --m) {
        sum += (n - m) * power / m;
        power *= k;
    }
    // power == k^(n-1)
    return sum - n * power * harmonic_number(n - 1);
}

}  // namespace maxstop
