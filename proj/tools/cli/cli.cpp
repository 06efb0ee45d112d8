#include "cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/manifest.hpp"
#include "cli/output.hpp"
#include "maxstop/cutoff_vector.hpp"
#include "maxstop/error.hpp"
#include "maxstop/gm.hpp"
#include "maxstop/optimize.hpp"
#include "maxstop/probability.hpp"
#include "maxstop/report.hpp"
#include "maxstop/simulation.hpp"
#include "maxstop/strategy.hpp"

namespace maxstop::cli {

namespace {

using nlohmann::json;

struct StrategyFlags {
    std::string strategy;
    std::string k_file;
    double k = -1.0;  // single-k value; negative means optimal
    bool permissive = false;

    void add_to(CLI::App* sub, bool allow_file) {
        sub->add_option("--strategy,-s", strategy,
                        "naive | gm | single-k | approx | optimal | explicit");
        sub->add_option("--k", k, "cutoff for single-k (default: best single k)");
        if (allow_file) {
            sub->add_option("--k-file", k_file, "explicit cutoffs, one per line");
            sub->add_flag("--permissive", permissive, "accept non-monotone cutoff files with a warning");
        }
    }
};

struct Resolved {
    std::string label;
    CutoffVector k;
};

Resolved resolve(const StrategyFlags& f, int n) {
    if (!f.k_file.empty()) {
        if (!f.strategy.empty() && parse_strategy_kind(f.strategy) != StrategyKind::explicit_cutoffs) {
            throw InvalidInput("--k-file conflicts with --strategy " + f.strategy);
        }
        auto k = read_cutoff_file(f.k_file, f.permissive ? Monotonicity::permissive : Monotonicity::strict);
        if (n > 0 && k.n() != n) {
            throw InvalidInput("cutoff file has " + std::to_string(k.n()) + " rounds but --n is " +
                               std::to_string(n));
        }
        return {"explicit", std::move(k)};
    }
    if (f.strategy.empty()) throw InvalidInput("give --strategy or --k-file");
    if (n < 1) throw InvalidInput("--n must be at least 1");
    StrategySpec spec;
    spec.kind = parse_strategy_kind(f.strategy);
    spec.n = n;
    if (spec.kind == StrategyKind::explicit_cutoffs) throw InvalidInput("explicit strategy needs --k-file");
    if (f.k >= 0.0) {
        if (spec.kind != StrategyKind::single_k) throw InvalidInput("--k only applies to single-k");
        spec.fixed_k = f.k;
    }
    return {std::string(strategy_name(spec.kind)), cutoffs_for(spec)};
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> v;
    for (const auto& item : split_list(s)) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw InvalidInput("not a number: '" + item + "'");
        v.push_back(x);
    }
    return v;
}

void check_format(const std::string& format) {
    if (format != "csv" && format != "json") throw InvalidInput("--format must be csv or json");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string classical_csv(const CutoffVector& k) {
    const auto rows = gm::round_win_probabilities(k);
    std::ostringstream os;
    os << "r,pw,display\n";
    double total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        total += rows[i];
        os << i + 1 << ',' << report::g17(rows[i]) << ',' << report::fixed(rows[i], 4) << '\n';
    }
    os << "total," << report::g17(total) << ',' << report::fixed(total, 4) << '\n';
    return os.str();
}

// Plot tables, one tidy CSV per figure kind.
std::vector<report::PlotPoint> plot_points(const std::string& kind, int n,
                                           const std::vector<std::string>& strategies, int max_n,
                                           double step, const StrategyFlags& base) {
    std::vector<report::PlotPoint> pts;
    const auto for_each_strategy = [&](auto&& body) {
        for (const auto& s : strategies) {
            StrategyFlags f = base;
            f.strategy = s;
            const auto r = resolve(f, n);
            body(r.label, r.k);
        }
    };
    if (kind == "per-round") {
        // C is shown per remaining round so it shares a scale with the others.
        for_each_strategy([&](const std::string& label, const CutoffVector& k) {
            const auto t = outcome_table(k);
            for (int r = 1; r <= n; ++r) {
                const auto& row = t.round(r);
                pts.push_back({label + ":W", double(r), row.pw});
                pts.push_back({label + ":FP", double(r), row.pfp});
                pts.push_back({label + ":FN", double(r), row.pfn});
                if (r < n) pts.push_back({label + ":C", double(r), row.pc / double(n - r)});
            }
        });
    } else if (kind == "cumulative") {
        for_each_strategy([&](const std::string& label, const CutoffVector& k) {
            const auto t = outcome_table(k);
            double acc = 0.0;
            for (int r = 1; r <= n; ++r) {
                acc += t.round(r).pw;
                pts.push_back({label, double(r), acc});
            }
        });
    } else if (kind == "cutoffs") {
        for_each_strategy([&](const std::string& label, const CutoffVector& k) {
            for (int r = 1; r <= n; ++r) pts.push_back({label, double(r), k.at_round(r)});
        });
    } else if (kind == "single-k") {
        if (!(step > 0.0 && step < 1.0)) throw InvalidInput("--step must be in (0,1)");
        const int steps = static_cast<int>(std::floor(1.0 / step));
        for (int i = 0; i < steps; ++i) {
            const double kv = i * step;
            if (kv >= 1.0) break;
            pts.push_back({"exact", kv, single_k_win_probability(n, kv)});
            pts.push_back({"classical", kv, gm::total_win_probability(single_k_cutoffs(n, kv))});
        }
    } else if (kind == "gm-total") {
        if (max_n < 1) throw InvalidInput("--max-n must be at least 1");
        for (int m = 1; m <= max_n; ++m) {
            pts.push_back({"classical:gm", double(m), gm::total_win_probability(gm::gm_cutoffs(m))});
            pts.push_back({"classical:naive", double(m), gm::total_win_probability(gm::naive_cutoffs(m))});
            pts.push_back({"exact:gm", double(m), total_win_probability(gm::gm_cutoffs(m))});
        }
    } else if (kind == "gm-rounds") {
        const auto gmk = gm::gm_cutoffs(n);
        const auto classical = gm::round_win_probabilities(gmk);
        const auto exact = outcome_table(gmk);
        for (int r = 1; r <= n; ++r) {
            pts.push_back({"classical:gm", double(r), classical[std::size_t(r - 1)]});
            pts.push_back({"exact:gm", double(r), exact.round(r).pw});
        }
        if (n >= 2) {
            const auto opt = outcome_table(cutoffs_for({StrategyKind::optimal, n, {}, {}}));
            for (int r = 1; r <= n; ++r) pts.push_back({"exact:optimal", double(r), opt.round(r).pw});
        }
    } else {
        throw InvalidInput("unknown plot kind '" + kind +
                           "' (per-round, cumulative, cutoffs, single-k, gm-total, gm-rounds)");
    }
    return pts;
}

std::string compare_csv(int n, std::uint64_t runs, std::uint64_t seed,
                        const std::vector<std::string>& labels,
                        const std::vector<DiscrepancyReport>& reps) {
    std::ostringstream os;
    os << "# master_seed=" << seed << "\n# n=" << n << "\n# runs=" << runs << '\n';
    os << "strategy,predicted_total,realized_total,standard_error,z,max_abs_z,display\n";
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& total = reps[i].rows.back();  // total-win row
        os << labels[i] << ',' << report::g17(total.predicted_prob) << ',' << report::g17(total.realized_freq)
           << ',' << report::g17(total.standard_error) << ',' << report::g17(total.z) << ','
           << report::g17(reps[i].max_abs_z) << ',' << report::fixed(total.realized_freq, 4) << '\n';
    }
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact outcome probabilities, optimal cutoffs and simulation for the full-information "
                 "best-choice game"};
    app.name("maxstop");
    app.require_subcommand(1, 1);

    int n = 0;
    std::string format = "csv";
    std::string output;
    std::uint64_t runs = 0;
    int threads = 0;
    StrategyFlags sflags;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", output, "output file (default stdout)");
    };

    auto* c_cutoffs = app.add_subcommand("cutoffs", "cutoff vector for a strategy");
    c_cutoffs->add_option("--n,-n", n, "game length")->required();
    c_cutoffs->add_option("--format", format, "csv | json");
    sflags.add_to(c_cutoffs, false);
    add_common(c_cutoffs);

    std::string model = "exact";
    auto* c_probs = app.add_subcommand("probs", "per-round W/FP/FN/C probabilities");
    c_probs->add_option("--n,-n", n, "game length (implied by --k-file)");
    c_probs->add_option("--format", format, "csv | json");
    c_probs->add_option("--model", model, "exact | classical (win column of the classical analysis)");
    sflags.add_to(c_probs, true);
    add_common(c_probs);

    double tol = 1e-10;
    int max_evals = 10000;
    std::string init;
    std::string init_file;
    std::string cutoffs_out;
    auto* c_opt = app.add_subcommand("optimize", "maximize the exact total win probability");
    c_opt->add_option("--n,-n", n, "game length")->required();
    c_opt->add_option("--tol", tol, "projected-gradient tolerance");
    c_opt->add_option("--max-evals", max_evals, "evaluation budget");
    c_opt->add_option("--init", init, "starting cutoffs, comma separated (k_n = 0 may be omitted)");
    c_opt->add_option("--init-file", init_file, "starting cutoffs file");
    c_opt->add_option("--cutoffs-out", cutoffs_out, "also write the cutoff CSV here");
    add_common(c_opt);

    std::optional<std::uint64_t> seed_opt;
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo tally against the predictions");
    c_sim->add_option("--n,-n", n, "game length");
    c_sim->add_option("--runs", runs, "number of games")->required();
    c_sim->add_option("--seed", seed_opt, "master seed (required)");
    c_sim->add_option("--threads", threads, "worker threads (default: all)");
    c_sim->add_option("--format", format, "csv | json");
    sflags.add_to(c_sim, true);
    add_common(c_sim);

    std::string strategies = "naive,gm,optimal,approx";
    bool strict = false;
    double threshold = 4.0;
    std::string report_dir;
    auto* c_cmp = app.add_subcommand("compare", "simulate several strategies on common draws");
    c_cmp->add_option("--n,-n", n, "game length")->required();
    c_cmp->add_option("--strategies", strategies, "comma separated strategy names");
    c_cmp->add_option("--runs", runs, "number of games")->required();
    c_cmp->add_option("--seed", seed_opt, "master seed (required)");
    c_cmp->add_option("--threads", threads, "worker threads (default: all)");
    c_cmp->add_flag("--strict", strict, "exit 3 when any cell exceeds the z threshold");
    c_cmp->add_option("--threshold", threshold, "|z| threshold for --strict");
    c_cmp->add_option("--report-dir", report_dir, "write each strategy's cell report here");
    add_common(c_cmp);

    auto* c_asym = app.add_subcommand("asymptote", "large-n limit of the best single-k strategy");
    add_common(c_asym);

    std::string kind;
    int max_n = 100;
    double step = 0.001;
    auto* c_plot = app.add_subcommand("plot", "tidy series,x,y data for figures");
    c_plot->add_option("kind", kind, "per-round | cumulative | cutoffs | single-k | gm-total | gm-rounds")
        ->required();
    c_plot->add_option("--n,-n", n, "game length");
    c_plot->add_option("--strategies", strategies, "comma separated strategy names");
    c_plot->add_option("--max-n", max_n, "largest n for gm-total");
    c_plot->add_option("--step", step, "k grid step for single-k");
    add_common(c_plot);

    auto* c_var = app.add_subcommand("gm-variant", "best 'k for t rounds, then 0' under the classical model");
    c_var->add_option("--n,-n", n, "game length")->required();
    add_common(c_var);

    std::string manifest;
    int jobs = 0;
    auto* c_batch = app.add_subcommand("batch", "run the jobs of a manifest");
    c_batch->add_option("manifest", manifest, "manifest file")->required();
    c_batch->add_option("--jobs,-j", jobs, "jobs run at once (default: hardware threads)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (c_cutoffs->parsed()) {
            check_format(format);
            const auto r = resolve(sflags, n);
            if (format == "csv") {
                emit(out, output, report::cutoffs_csv(r.k));
            } else {
                json j = report::cutoffs_json(r.k);
                j["strategy"] = r.label;
                emit(out, output, dump(j));
            }
        } else if (c_probs->parsed()) {
            check_format(format);
            const auto r = resolve(sflags, n);
            for (const auto& w : r.k.warnings()) err << "warning: " << w << '\n';
            if (model == "classical") {
                if (format == "json") {
                    const auto rows = gm::round_win_probabilities(r.k);
                    json j{{"strategy", r.label}, {"n", r.k.n()}, {"model", "classical"}, {"pw", rows},
                           {"pw_total", gm::total_win_probability(r.k)}};
                    emit(out, output, dump(j));
                } else {
                    emit(out, output, classical_csv(r.k));
                }
            } else if (model == "exact") {
                const auto t = outcome_table(r.k);
                if (format == "csv") {
                    emit(out, output, report::outcome_table_csv(t));
                } else {
                    json j = report::outcome_table_json(t);
                    j["strategy"] = r.label;
                    if (!r.k.warnings().empty()) j["warnings"] = r.k.warnings();
                    emit(out, output, dump(j));
                }
            } else {
                throw InvalidInput("--model must be exact or classical");
            }
        } else if (c_opt->parsed()) {
            OptimizeOptions opts;
            opts.tol = tol;
            opts.max_evaluations = max_evals;
            if (!init.empty() && !init_file.empty()) throw InvalidInput("give --init or --init-file, not both");
            if (!init.empty()) {
                auto v = parse_number_list(init);
                if (static_cast<int>(v.size()) == n - 1) v.push_back(0.0);
                opts.init = CutoffVector(std::move(v));
            } else if (!init_file.empty()) {
                opts.init = read_cutoff_file(init_file);
            }
            if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
            if (max_evals < 1) throw InvalidInput("--max-evals must be positive");
            const auto res = optimize_cutoffs(n, opts);
            emit(out, output, dump(report::optimization_json(res)));
            if (!cutoffs_out.empty()) emit(out, cutoffs_out, report::cutoffs_csv(res.cutoffs));
            if (!res.converged) {
                err << "optimize: not converged (projected gradient " << report::g17(res.gradient_norm)
                    << " after " << res.evaluations << " evaluations)\n";
                return exit_not_converged;
            }
        } else if (c_sim->parsed()) {
            check_format(format);
            if (!seed_opt) throw InvalidInput("simulate needs an explicit --seed");
            if (runs == 0) throw InvalidInput("--runs must be positive");
            const auto r = resolve(sflags, n);
            const auto tally = simulate(r.k, runs, *seed_opt, threads);
            const auto rep = compare_to_prediction(tally, outcome_table(r.k));
            if (format == "csv") {
                emit(out, output, report::discrepancy_csv(rep));
            } else {
                json j{{"strategy", r.label},
                       {"cutoffs", report::cutoffs_json(r.k)},
                       {"tally", report::tally_json(tally)},
                       {"discrepancy", report::discrepancy_json(rep)}};
                emit(out, output, dump(j));
            }
        } else if (c_cmp->parsed()) {
            if (!seed_opt) throw InvalidInput("compare needs an explicit --seed");
            if (runs == 0) throw InvalidInput("--runs must be positive");
            const auto names = split_list(strategies);
            if (names.empty()) throw InvalidInput("--strategies is empty");
            std::vector<std::string> labels;
            std::vector<CutoffVector> ks;
            for (const auto& s : names) {
                StrategyFlags f;
                f.strategy = s;
                auto r = resolve(f, n);
                labels.push_back(r.label);
                ks.push_back(std::move(r.k));
            }
            const auto tallies = simulate_many(ks, runs, *seed_opt, threads);
            std::vector<DiscrepancyReport> reps;
            for (std::size_t i = 0; i < ks.size(); ++i) {
                reps.push_back(compare_to_prediction(tallies[i], outcome_table(ks[i])));
                if (!report_dir.empty()) {
                    emit(out, report_dir + "/" + labels[i] + ".csv", report::discrepancy_csv(reps.back()));
                }
            }
            emit(out, output, compare_csv(n, runs, *seed_opt, labels, reps));
            if (strict) {
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    if (reps[i].max_abs_z > threshold || reps[i].insufficient_runs) {
                        err << "compare: " << labels[i] << " max |z| " << report::fixed(reps[i].max_abs_z, 2)
                            << " exceeds " << threshold << '\n';
                        return exit_disagreement;
                    }
                }
            }
        } else if (c_asym->parsed()) {
            json j = report::asymptote_json(gm::single_k_asymptote());
            const auto big = optimal_single_k(10000);
            j["single_k_check"] = {{"n", 10000}, {"k", big.k}, {"pw", big.pw}};
            emit(out, output, dump(j));
        } else if (c_plot->parsed()) {
            const bool needs_n = kind != "gm-total";
            if (needs_n && n < 1) throw InvalidInput("plot " + kind + " needs --n");
            if (kind == "single-k" && n < 2) throw InvalidInput("single-k needs n >= 2");
            emit(out, output,
                 report::tidy_csv(plot_points(kind, n, split_list(strategies), max_n, step, sflags)));
        } else if (c_var->parsed()) {
            const auto v = gm::best_single_k_then_zero(n);
            json j{{"n", n}, {"t", v.t}, {"k", v.k}, {"pwin", v.pwin}};
            emit(out, output, dump(j));
        } else if (c_batch->parsed()) {
            const auto m = read_manifest(manifest);
            const int width = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
            return run_manifest(m, width, out, err);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_ok;
}

}  // namespace maxstop::cli
