// Hand-integrated probability polynomials for small games, transcribed
// cell by cell. They are deliberately not derived from the general
// continuation formula so they can serve as an independent check of it.

#include "maxstop/oracle.hpp"

#include "maxstop/error.hpp"

namespace maxstop::oracle {

namespace {

using Quad = std::array<double, 4>;  // W, FP, FN, C

double p(double x, int e) { return ipow(x, e); }

Quad n2(double a, int r) {
    if (r == 1) return {0.5 - p(a, 2) / 2, 0.5 - a + p(a, 2) / 2, p(a, 2) / 2, a - p(a, 2) / 2};
    return {a - p(a, 2) / 2, 0, 0, 0};
}

Quad n3(double a, double b, int r) {
    switch (r) {
        case 1:
            return {1.0 / 3 - p(a, 3) / 3, 2.0 / 3 - a + p(a, 3) / 3, p(a, 3) / 3, a - p(a, 3) / 3};
        case 2:
            return {a / 2 - p(a, 3) / 6 - p(b, 3) / 3,
                    a / 2 - p(a, 3) / 6 - a * b + p(a, 2) * b / 2 + p(b, 3) / 6,
                    p(b, 3) / 3,
                    a * b - p(a, 2) * b / 2 - p(b, 3) / 6};
        default:
            return {a * b - p(a, 2) * b / 2 - p(b, 3) / 6, 0, 0, 0};
    }
}

Quad n4(double a, double b, double c, int r) {
    switch (r) {
        case 1:
            return {0.25 - p(a, 4) / 4, 0.75 - a + p(a, 4) / 4, p(a, 4) / 4, a - p(a, 4) / 4};
        case 2:
            return {a / 3 - p(a, 4) / 12 - p(b, 4) / 4,
                    2 * a / 3 - p(a, 4) / 6 - a * b + p(a, 3) * b / 3 + p(b, 4) / 6,
                    p(b, 4) / 4,
                    a * b - p(a, 3) * b / 3 - p(b, 4) / 6};
        case 3:
            return {a * b / 2 - p(a, 3) * b / 6 - p(b, 4) / 12 - p(c, 4) / 4,
                    a * b / 2 - p(a, 3) * b / 6 - p(b, 4) / 12 - a * b * c + p(a, 2) * b * c / 2 +
                        p(b, 3) * c / 6 + p(c, 4) / 12,
                    p(c, 4) / 4,
                    a * b * c - p(a, 2) * b * c / 2 - p(b, 3) * c / 6 - p(c, 4) / 12};
        default:
            return {a * b * c - p(a, 2) * b * c / 2 - p(b, 3) * c / 6 - p(c, 4) / 12, 0, 0, 0};
    }
}

double n5_continue(std::span<const double> k, int r) {
    const double a = k[0], b = k[1], c = k[2], d = k[3];
    switch (r) {
        case 1: return a - p(a, 5) / 5;
        case 2: return a * b - p(a, 4) * b / 4 - 3 * p(b, 5) / 20;
        case 3: return a * b * c - p(a, 3) * b * c / 3 - p(b, 4) * c / 6 - p(c, 5) / 10;
        case 4:
            return a * b * c * d - p(a, 2) * b * c * d / 2 - p(b, 3) * c * d / 6 - p(c, 4) * d / 12 -
                   p(d, 5) / 20;
        default: return 0.0;
    }
}

double n6_continue(std::span<const double> k, int r) {
    const double a = k[0], b = k[1], c = k[2], d = k[3], e = k[4];
    switch (r) {
        case 1: return a - p(a, 6) / 6;
        case 2: return a * b - p(a, 5) * b / 5 - 2 * p(b, 6) / 15;
        case 3: return a * b * c - p(a, 4) * b * c / 4 - 3 * p(b, 5) * c / 20 - p(c, 6) / 10;
        case 4:
            return a * b * c * d - p(a, 3) * b * c * d / 3 - p(b, 4) * c * d / 6 - p(c, 5) * d / 10 -
                   p(d, 6) / 15;
        case 5:
            return a * b * c * d * e - p(a, 2) * b * c * d * e / 2 - p(b, 3) * c * d * e / 6 -
                   p(c, 4) * d * e / 12 - p(d, 5) * e / 20 - p(e, 6) / 30;
        default: return 0.0;
    }
}

}  // namespace

std::optional<double> fixture_probability(const CutoffVector& k, int r, Outcome outcome) {
    const int n = k.n();
    if (r < 1 || r > n) throw InvalidInput("round outside [1, n]");
    const auto kv = k.values();
    const auto idx = static_cast<std::size_t>(outcome);
    switch (n) {
        case 1: {
            const Quad q{1.0, 0.0, 0.0, 0.0};
            return q[idx];
        }
        case 2: return n2(kv[0], r)[idx];
        case 3: return n3(kv[0], kv[1], r)[idx];
        case 4: return n4(kv[0], kv[1], kv[2], r)[idx];
        case 5:
        case 6:
            if (outcome == Outcome::false_negative) return r == n ? 0.0 : p(kv[static_cast<std::size_t>(r - 1)], n) / n;
            if (outcome == Outcome::cont) return n == 5 ? n5_continue(kv, r) : n6_continue(kv, r);
            return std::nullopt;
        default: return std::nullopt;
    }
}

}  // namespace maxstop::oracle
