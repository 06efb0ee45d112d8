#include "maxstop/cutoff_vector.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "maxstop/error.hpp"

namespace maxstop {

namespace {

struct Violation {
    std::size_t index;  // 0-based position of the offending entry
    std::string what;
};

std::optional<Violation> find_violation(const std::vector<double>& k, Monotonicity mode,
                                        std::vector<std::string>& warnings, bool& monotone) {
    if (k.empty()) {
        return Violation{0, "cutoff vector is empty"};
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double v = k[i];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            std::ostringstream os;
            os << "k_" << i + 1 << " = " << v << " is outside [0,1]";
            return Violation{i, os.str()};
        }
        if (v == 1.0) {
            warnings.push_back("k_" + std::to_string(i + 1) + " = 1: round " +
                               std::to_string(i + 1) + " can never accept");
        }
        if (i > 0 && v > k[i - 1]) {
            std::ostringstream os;
            os << "k_" << i + 1 << " = " << v << " exceeds k_" << i << " = " << k[i - 1]
               << " (cutoffs must be nonincreasing)";
            if (mode == Monotonicity::strict) {
                return Violation{i, os.str()};
            }
            monotone = false;
            warnings.push_back(os.str() + "; closed-form probabilities are not exact");
        }
    }
    if (k.back() != 0.0) {
        std::ostringstream os;
        os << "last cutoff k_" << k.size() << " = " << k.back() << " must be 0";
        return Violation{k.size() - 1, os.str()};
    }
    return std::nullopt;
}

}  // namespace

CutoffVector::CutoffVector(std::vector<double> k, Monotonicity mode) : k_(std::move(k)) {
    if (auto v = find_violation(k_, mode, warnings_, monotone_)) {
        throw InvalidInput(v->what);
    }
}

CutoffVector parse_cutoff_text(const std::string& text, Monotonicity mode) {
    std::vector<double> k;
    std::vector<int> line_of;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw InvalidInput("line " + std::to_string(line_no) + ": '" + token +
                               "' is not a number");
        }
        k.push_back(value);
        line_of.push_back(line_no);
    }
    if (k.empty()) {
        throw InvalidInput("cutoff file contains no decision numbers");
    }
    std::vector<std::string> warnings;
    bool monotone = true;
    if (auto v = find_violation(k, mode, warnings, monotone)) {
        throw InvalidInput("line " + std::to_string(line_of[v->index]) + ": " + v->what);
    }
    return CutoffVector(std::move(k), mode);
}

CutoffVector read_cutoff_file(const std::string& path, Monotonicity mode) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("cannot open cutoff file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cutoff_text(buf.str(), mode);
}

}  // namespace maxstop
