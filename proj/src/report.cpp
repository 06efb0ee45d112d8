#include "maxstop/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace maxstop::report {

std::string g17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    if (!std::isfinite(v)) return g17(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string cutoffs_csv(const CutoffVector& k) {
    std::ostringstream os;
    os << "r,k,display\n";
    for (int r = 1; r <= k.n(); ++r) {
        os << r << ',' << g17(k.at_round(r)) << ',' << fixed(k.at_round(r), 8) << '\n';
    }
    return os.str();
}

nlohmann::json cutoffs_json(const CutoffVector& k) {
    nlohmann::json j;
    j["n"] = k.n();
    j["k"] = std::vector<double>(k.values().begin(), k.values().end());
    if (!k.warnings().empty()) j["warnings"] = k.warnings();
    return j;
}

std::string outcome_table_csv(const RoundOutcomeTable& t) {
    std::ostringstream os;
    os << "r,pw,pfp,pfn,pc,display\n";
    for (int r = 1; r <= t.n; ++r) {
        const auto& row = t.round(r);
        os << r << ',' << g17(row.pw) << ',' << g17(row.pfp) << ',' << g17(row.pfn) << ','
           << g17(row.pc) << ',' << fixed(row.pw, 6) << '\n';
    }
    os << "total," << g17(t.pw_total) << ',' << g17(t.pfp_total) << ',' << g17(t.pfn_total)
       << ",0," << fixed(t.pw_total, 6) << '\n';
    return os.str();
}

nlohmann::json outcome_table_json(const RoundOutcomeTable& t) {
    nlohmann::json j;
    j["n"] = t.n;
    auto rows = nlohmann::json::array();
    for (int r = 1; r <= t.n; ++r) {
        const auto& row = t.round(r);
        rows.push_back({{"r", r}, {"pw", row.pw}, {"pfp", row.pfp}, {"pfn", row.pfn}, {"pc", row.pc}});
    }
    j["rows"] = std::move(rows);
    j["totals"] = {{"pw", t.pw_total}, {"pfp", t.pfp_total}, {"pfn", t.pfn_total}};
    return j;
}

std::string discrepancy_csv(const DiscrepancyReport& rep) {
    std::ostringstream os;
    os << "# master_seed=" << rep.master_seed << '\n'
       << "# n=" << rep.n << '\n'
       << "# samples=" << rep.samples << '\n'
       << "# max_abs_z=" << g17(rep.max_abs_z) << '\n';
    if (rep.insufficient_runs) os << "# insufficient_runs=1\n";
    os << "round,outcome,realized_count,realized_freq,predicted_prob,z,display\n";
    for (const auto& row : rep.rows) {
        if (row.round == 0) {
            os << "total";
        } else {
            os << row.round;
        }
        os << ',' << outcome_code(row.outcome) << ',' << row.realized_count << ','
           << g17(row.realized_freq) << ',' << g17(row.predicted_prob) << ',' << g17(row.z) << ','
           << fixed(row.realized_freq, 4) << '\n';
    }
    return os.str();
}

nlohmann::json discrepancy_json(const DiscrepancyReport& rep) {
    nlohmann::json j;
    j["master_seed"] = rep.master_seed;
    j["n"] = rep.n;
    j["samples"] = rep.samples;
    j["max_abs_z"] = number_or_null(rep.max_abs_z);
    j["insufficient_runs"] = rep.insufficient_runs;
    auto rows = nlohmann::json::array();
    for (const auto& row : rep.rows) {
        rows.push_back({{"round", row.round == 0 ? nlohmann::json("total") : nlohmann::json(row.round)},
                        {"outcome", outcome_code(row.outcome)},
                        {"realized_count", row.realized_count},
                        {"realized_freq", row.realized_freq},
                        {"predicted_prob", row.predicted_prob},
                        {"standard_error", number_or_null(row.standard_error)},
                        {"z", number_or_null(row.z)}});
    }
    j["rows"] = std::move(rows);
    return j;
}

nlohmann::json tally_json(const SimulationTally& t) {
    nlohmann::json j;
    j["master_seed"] = t.master_seed;
    j["n"] = t.n;
    j["runs"] = t.runs;
    j["win"] = t.win;
    j["false_positive"] = t.false_positive;
    j["false_negative"] = t.false_negative;
    j["max_position"] = t.max_position;
    j["mean_max"] = number_or_null(t.mean_max());
    auto cont = nlohmann::json::array();
    auto cond = nlohmann::json::array();
    for (int r = 0; r < t.n; ++r) {
        cont.push_back(t.continued(r));
        cond.push_back(number_or_null(t.conditional_max_mean(r)));
    }
    j["continued"] = std::move(cont);
    j["conditional_max_mean"] = std::move(cond);
    return j;
}

nlohmann::json optimization_json(const OptimizationResult& res) {
    nlohmann::json j;
    j["n"] = res.cutoffs.n();
    j["k"] = std::vector<double>(res.cutoffs.values().begin(), res.cutoffs.values().end());
    j["pw_total"] = res.pw_total;
    j["iterations"] = res.iterations;
    j["evaluations"] = res.evaluations;
    j["converged"] = res.converged;
    j["gradient_norm"] = res.gradient_norm;
    return j;
}

nlohmann::json asymptote_json(const gm::Asymptote& a) {
    nlohmann::json j;
    j["mu"] = a.mu;
    j["value"] = a.value;
    j["series"] = {{"terms", a.series.terms},
                   {"last_term", a.series.last_term},
                   {"relative_last_term", a.series.value > 0 ? a.series.last_term / a.series.value : 0.0},
                   {"stop_rule", "term < 1e-16 * running sum"}};
    return j;
}

std::string tidy_csv(const std::vector<PlotPoint>& points) {
    std::ostringstream os;
    os << "series,x,y\n";
    for (const auto& p : points) os << p.series << ',' << g17(p.x) << ',' << g17(p.y) << '\n';
    return os.str();
}

}  // namespace maxstop::report
