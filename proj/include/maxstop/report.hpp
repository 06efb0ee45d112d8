#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "maxstop/cutoff_vector.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/optimize.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/simulation.hpp"

namespace maxstop::report {

// CSV numbers use 17 significant digits so files round-trip exactly; each
// table also carries one rounded `display` column for reading by eye.

[[nodiscard]] std::string g17(double v);
[[nodiscard]] std::string fixed(double v, int decimals);

[[nodiscard]] std::string cutoffs_csv(const CutoffVector& k);
[[nodiscard]] nlohmann::json cutoffs_json(const CutoffVector& k);

/// r,pw,pfp,pfn,pc,display rows followed by a `total` row.
[[nodiscard]] std::string outcome_table_csv(const RoundOutcomeTable& t);
[[nodiscard]] nlohmann::json outcome_table_json(const RoundOutcomeTable& t);

/// `# key=value` header lines (master seed, n, samples) then
/// round,outcome,realized_count,realized_freq,predicted_prob,z,display.
/// The total-win row has round `total`.
[[nodiscard]] std::string discrepancy_csv(const DiscrepancyReport& rep);
[[nodiscard]] nlohmann::json discrepancy_json(const DiscrepancyReport& rep);

[[nodiscard]] nlohmann::json tally_json(const SimulationTally& tally);

[[nodiscard]] nlohmann::json optimization_json(const OptimizationResult& res);

[[nodiscard]] nlohmann::json asymptote_json(const gm::Asymptote& a);

struct PlotPoint {
    std::string series;
    double x = 0.0;
    double y = 0.0;
};

/// Tidy series,x,y table.
[[nodiscard]] std::string tidy_csv(const std::vector<PlotPoint>& points);

}  // namespace maxstop::report
