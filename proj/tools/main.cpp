// Command-line front end: simulate two-sided marketplace experiments and
// estimate the total average treatment effect under the prioritized-ranking
// design or an item-side baseline.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tspr/calibration.hpp"
#include "tspr/csv.hpp"
#include "tspr/errors.hpp"
#include "tspr/harness.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliState {
    tspr::RunConfig cfg;
    std::string outcome = "booking";
    std::string scan = "top_down";
    std::string booking_mode = "logit";
    std::string params_path;
    double delta_value = 0.0;

    // calibrate
    std::string impressions_path;
    std::size_t log_n = 40000;
    double random_frac = 1.0 / 3.0;
    std::vector<double> sigma_grid;
    std::vector<int> nq_grid;
    std::size_t sim_impressions = 20000;
    int holdout_every = 5;  // impression_id % holdout_every == 0 is held out
    bool skip_delta = false;
    bool write_log = false;
};

json num_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

void write_json_file(const fs::path& path, const json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw tspr::DataError("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
}

json config_echo(const tspr::RunConfig& cfg, double delta) {
    json j{{"master_seed", cfg.master_seed},
           {"n_items", cfg.n_items},
           {"n_queries", cfg.n_queries},
           {"pre_queries", cfg.pre_queries()},
           {"p", cfg.design.p},
           {"r_min", cfg.design.r_min},
           {"sigma", cfg.sigma},
           {"n_q_min", cfg.n_q.min},
           {"n_q_max", cfg.n_q.max},
           {"runs", cfg.runs},
           {"bootstrap_replicates", cfg.bootstrap_replicates},
           {"delta", delta}};
    return j;
}

void write_report(const tspr::RunConfig& cfg, const std::string& command, double delta,
                  const std::vector<std::string>& outputs, json results) {
    json j{{"command", command},
           {"config", config_echo(cfg, delta)},
           {"outputs", outputs},
           {"results", std::move(results)}};
    write_json_file(fs::path(cfg.out_dir) / "report.json", j);
}

json estimate_json(const tspr::EstimateReport& r) {
    json strata = json::array();
    for (const auto& s : r.strata)
        strata.push_back({{"l", s.l},
                          {"n_A", s.n_A},
                          {"n_B", s.n_B},
                          {"mean_y_A", s.mean_y_A},
                          {"mean_y_B", s.mean_y_B},
                          {"weight", s.weight}});
    return json{{"method", r.method},
                {"theta_hat", r.theta_hat},
                {"se", r.se},
                {"ybar0", r.ybar0},
                {"n_dropped_strata", r.n_dropped_strata},
                {"dropped_weight", r.dropped_weight},
                {"strata", strata},
                {"warnings", r.warnings}};
}

json summary_json(const tspr::MethodSummary& s) {
    return json{{"method", s.method},        {"mean", s.mean},
                {"stddev", num_or_null(s.stddev)}, {"mean_se", s.mean_se},
                {"coverage", s.coverage},    {"n_ok", s.n_ok},
                {"n_failed", s.n_failed}};
}

void write_strata_csv(const fs::path& path, const tspr::EstimateReport& r) {
    auto out = tspr::csv::open_output(path);
    out << "l,n_A,n_B,mean_y_A,mean_y_B,weight\n";
    char buf[160];
    for (const auto& s : r.strata) {
        std::snprintf(buf, sizeof buf, "%d,%zu,%zu,%.17g,%.17g,%.17g\n", s.l, s.n_A, s.n_B,
                      s.mean_y_A, s.mean_y_B, s.weight);
        out << buf;
    }
}

void write_runs_csv(const fs::path& path, const std::vector<tspr::RunRow>& rows) {
    auto out = tspr::csv::open_output(path);
    out << "run,method,theta_hat,se,covered_95\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%d\n", r.run, r.method.c_str(),
                      r.theta_hat, r.se, int(r.covered_95));
        out << buf;
    }
}

void write_hist_csv(const fs::path& path, const std::vector<tspr::HistBin>& bins) {
    auto out = tspr::csv::open_output(path);
    out << "method,lo,hi,count\n";
    char buf[160];
    for (const auto& b : bins) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%zu\n", b.method.c_str(), b.lo, b.hi,
                      b.count);
        out << buf;
    }
}

// Per-run seed for the single-run subcommands: identical to Monte Carlo run 0.
std::uint64_t single_run_seed(const tspr::RunConfig& cfg) {
    return tspr::derive_seed(cfg.master_seed, tspr::stream::kRun, 0);
}

std::vector<tspr::QueryRecord> merge_sorted(std::vector<tspr::QueryRecord> a,
                                            std::vector<tspr::QueryRecord> b) {
    for (auto& r : b) a.push_back(std::move(r));
    std::sort(a.begin(), a.end(), [](const tspr::QueryRecord& x, const tspr::QueryRecord& y) {
        return x.query_id < y.query_id;
    });
    return a;
}

void apply_params_file(tspr::RunConfig& cfg, const std::string& path) {
    const auto p = tspr::read_fitted_params_json(path);
    cfg.behavior.click = p.click;
    cfg.behavior.booking = p.booking;
    cfg.sigma = p.sigma;
    if (p.n_q > 0) {
        cfg.n_q.max = p.n_q;
        if (cfg.n_q.min > p.n_q) cfg.n_q.min = p.n_q;
    }
    if (p.delta && !cfg.delta) cfg.delta = *p.delta;
}

int cmd_ground_truth(const tspr::RunConfig& cfg) {
    const double delta = tspr::resolve_delta(cfg);
    const auto gt = tspr::run_ground_truth(cfg, delta);
    std::printf("delta:           %.6f\n", gt.delta);
    std::printf("conversion none: %.6f\n", gt.conversion_none);
    std::printf("conversion all:  %.6f\n", gt.conversion_all);
    std::printf("tate:            %+.6f\n", gt.tate);
    write_report(cfg, "ground-truth", delta, {"report.json"},
                 json{{"tate", gt.tate},
                      {"conversion_none", gt.conversion_none},
                      {"conversion_all", gt.conversion_all},
                      {"delta", gt.delta}});
    return 0;
}

int cmd_pre_experiment(const tspr::RunConfig& cfg) {
    const auto res = tspr::run_pre_experiment(cfg, single_run_seed(cfg));
    const fs::path dir(cfg.out_dir);
    tspr::write_query_records_csv(dir / "records.csv", res.records);
    std::printf("ybar0: %.6f over %zu queries (%zu dropped)\n", res.ybar0, res.records.size(),
                res.diag.n_dropped_queries);
    write_report(cfg, "pre-experiment", 0.0, {"records.csv", "report.json"},
                 json{{"ybar0", res.ybar0},
                      {"n_records", res.records.size()},
                      {"n_dropped_queries", res.diag.n_dropped_queries}});
    return 0;
}

int cmd_tspr(const tspr::RunConfig& cfg) {
    const double delta = tspr::resolve_delta(cfg);
    auto res = tspr::run_tspr_experiment(cfg, single_run_seed(cfg), delta);
    const fs::path dir(cfg.out_dir);
    const auto records = merge_sorted(std::move(res.records_a), std::move(res.records_b));
    tspr::write_query_records_csv(dir / "records.csv", records);
    tspr::write_item_outcomes_csv(dir / "items.csv", records);
    write_strata_csv(dir / "strata.csv", res.report);
    std::printf("theta_hat: %+.6f  se: %.6f  ybar0: %.6f  strata: %zu (dropped %zu)\n",
                res.report.theta_hat, res.report.se, res.ybar0, res.report.strata.size(),
                res.report.n_dropped_strata);
    write_report(cfg, "tspr", delta,
                 {"records.csv", "items.csv", "strata.csv", "report.json"},
                 estimate_json(res.report));
    return 0;
}

int cmd_naive(const tspr::RunConfig& cfg) {
    const double delta = tspr::resolve_delta(cfg);
    auto res = tspr::run_naive_experiment(cfg, single_run_seed(cfg), delta);
    const fs::path dir(cfg.out_dir);
    tspr::write_query_records_csv(dir / "records.csv", res.records);
    tspr::write_item_outcomes_csv(dir / "items.csv", res.records);
    std::printf("theta_hat: %+.6f  se: %.6f\n", res.report.theta_hat, res.report.se);
    write_report(cfg, "naive", delta, {"records.csv", "items.csv", "report.json"},
                 estimate_json(res.report));
    return 0;
}

int cmd_monte_carlo(const tspr::RunConfig& cfg) {
    const auto mc = tspr::run_monte_carlo(cfg);
    const fs::path dir(cfg.out_dir);
    write_runs_csv(dir / "runs.csv", mc.rows);
    write_hist_csv(dir / "hist.csv", mc.hist);
    std::printf("truth: %+.6f\n", mc.truth.tate);
    for (const auto* s : {&mc.tspr, &mc.naive})
        std::printf("%-8s mean %+.6f  std %.6f  mean_se %.6f  coverage %.2f  (%zu ok, %zu failed)\n",
                    s->method.c_str(), s->mean, s->stddev, s->mean_se, s->coverage, s->n_ok,
                    s->n_failed);
    write_report(cfg, "monte-carlo", mc.truth.delta,
                 {"runs.csv", "hist.csv", "report.json"},
                 json{{"truth",
                       {{"tate", mc.truth.tate},
                        {"conversion_none", mc.truth.conversion_none},
                        {"conversion_all", mc.truth.conversion_all},
                        {"delta", mc.truth.delta}}},
                      {"tspr", summary_json(mc.tspr)},
                      {"naive_is", summary_json(mc.naive)}});
    return 0;
}

int cmd_sensitivity(const tspr::RunConfig& cfg) {
    std::vector<double> grid = cfg.r_min_grid;
    if (grid.empty()) grid = {1.0, 1.2, 1.4, 1.7, 2.0, 2.3};
    const auto cells = tspr::run_sensitivity(cfg, grid);
    const fs::path dir(cfg.out_dir);
    {
        auto out = tspr::csv::open_output(dir / "sensitivity.csv");
        out << "r_min,mean,stddev,mean_se,coverage,n_ok,n_zero_strata_runs\n";
        char buf[200];
        for (const auto& c : cells) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%zu\n", c.r_min,
                          c.tspr.mean, c.tspr.stddev, c.tspr.mean_se, c.tspr.coverage,
                          c.tspr.n_ok, c.n_zero_strata_runs);
            out << buf;
        }
    }
    json rows = json::array();
    for (const auto& c : cells) {
        std::printf("r_min %-5.2f mean %+.6f  mean_se %.6f  (%zu ok, %zu zero-strata)\n", c.r_min,
                    c.tspr.mean, c.tspr.mean_se, c.tspr.n_ok, c.n_zero_strata_runs);
        rows.push_back({{"r_min", c.r_min},
                        {"tspr", summary_json(c.tspr)},
                        {"n_zero_strata_runs", c.n_zero_strata_runs}});
    }
    write_report(cfg, "sensitivity", cfg.delta ? *cfg.delta : 0.0,
                 {"sensitivity.csv", "report.json"}, json{{"cells", rows}});
    return 0;
}

int cmd_partial_curves(const tspr::RunConfig& cfg) {
    const double delta = tspr::resolve_delta(cfg);
    const auto rows = tspr::run_partial_outcome_curves(cfg, delta);
    const fs::path dir(cfg.out_dir);
    {
        auto out = tspr::csv::open_output(dir / "partial_curves.csv");
        out << "l,scenario,mean_partial\n";
        char buf[120];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g\n", r.l, r.scenario.c_str(),
                          r.mean_partial);
            out << buf;
        }
    }
    std::printf("wrote %zu curve points\n", rows.size());
    write_report(cfg, "partial-curves", delta, {"partial_curves.csv", "report.json"},
                 json{{"n_rows", rows.size()}});
    return 0;
}

int cmd_diagnose(const tspr::RunConfig& cfg) {
    const double delta = tspr::resolve_delta(cfg);
    std::vector<int> ls = cfg.l_values;
    if (ls.empty()) ls = {0, 1, 2, 4, 8, 16, 24};
    const auto rows = tspr::diagnose_proportionality(cfg, delta, ls);
    const fs::path dir(cfg.out_dir);
    {
        auto out = tspr::csv::open_output(dir / "proportionality.csv");
        out << "l,theta_l_measured,theta_l_predicted,rel_deviation,se\n";
        char buf[200];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.l,
                          r.theta_l_measured, r.theta_l_predicted, r.rel_deviation, r.se);
            out << buf;
        }
    }
    json jrows = json::array();
    for (const auto& r : rows) {
        std::printf("l %-3d measured %+.6f  predicted %+.6f  rel_dev %+.4f  se %.6f\n", r.l,
                    r.theta_l_measured, r.theta_l_predicted, r.rel_deviation, r.se);
        jrows.push_back({{"l", r.l},
                         {"measured", r.theta_l_measured},
                         {"predicted", r.theta_l_predicted},
                         {"rel_deviation", r.rel_deviation},
                         {"se", r.se}});
    }
    write_report(cfg, "diagnose", delta, {"proportionality.csv", "report.json"},
                 json{{"rows", jrows}});
    return 0;
}

int cmd_calibrate(const CliState& st) {
    const auto& cfg = st.cfg;
    const fs::path dir(cfg.out_dir);
    std::vector<std::string> outputs;
    json results;

    // 1. Impression log: load a real one or generate a synthetic one.
    std::vector<tspr::ImpressionRow> rows;
    if (!st.impressions_path.empty()) {
        const auto load = tspr::load_impressions(st.impressions_path);
        std::printf("loaded %zu rows (%zu skipped, %zu violations)\n", load.rows.size(),
                    load.n_skipped, load.n_violations);
        results["load"] = {{"rows", load.rows.size()},
                           {"skipped", load.n_skipped},
                           {"violations", load.n_violations}};
        rows = std::move(load.rows);
    } else {
        rows = tspr::generate_impression_log(cfg, st.log_n, st.random_frac,
                                             tspr::derive_seed(cfg.master_seed, tspr::stream::kLog));
        std::printf("generated %zu impression rows (%zu impressions)\n", rows.size(), st.log_n);
        if (st.write_log) {
            tspr::write_impressions_csv(dir / "impressions.csv", rows);
            outputs.push_back("impressions.csv");
        }
    }

    // 2. Hold-out split by impression id; fits never see the hold-out.
    std::vector<tspr::ImpressionRow> train, holdout;
    for (const auto& r : rows)
        (r.impression_id % st.holdout_every == 0 ? holdout : train).push_back(r);
    if (train.empty() || holdout.empty())
        throw tspr::DataError("hold-out split left an empty side");

    // 3. Click model on randomly-sorted training rows when available
    // (random sorting breaks the position/quality confound).
    std::vector<tspr::ImpressionRow> click_rows;
    for (const auto& r : train)
        if (r.random_sort) click_rows.push_back(r);
    const bool used_random = !click_rows.empty();
    if (!used_random) click_rows = train;
    const auto click_fit = tspr::fit_click_model(click_rows);
    std::printf("click fit: %s after %d iterations, loglik %.2f\n",
                click_fit.converged ? "converged" : "NOT converged", click_fit.iterations,
                click_fit.log_likelihood);

    // 4. Booking model on the same training rows.
    const auto sets = tspr::build_choice_sets(train);
    const auto booking_fit = tspr::fit_booking_model(sets);
    std::printf("booking fit: g_v = %.4f (%s)\n", booking_fit.coefficients[0],
                booking_fit.converged ? "converged" : "NOT converged");

    tspr::RunConfig fitted_cfg = cfg;
    fitted_cfg.behavior.click = {click_fit.coefficients[0], click_fit.coefficients[1],
                                 click_fit.coefficients[2], click_fit.coefficients[3],
                                 click_fit.coefficients[4]};
    fitted_cfg.behavior.booking.g_v = booking_fit.coefficients[0];

    // 5. Moment targets from the ranked hold-out rows.
    const auto targets = tspr::compute_moments(holdout);
    results["targets"] = {{"clicks_per_impression", targets.clicks_per_impression},
                          {"bookings_per_impression", targets.bookings_per_impression},
                          {"ctr_ranks", targets.ctr_by_rank.size()}};

    // 6. Optional hyperparameter grid search on (sigma, n_q).
    if (!st.sigma_grid.empty() && !st.nq_grid.empty()) {
        const auto search = tspr::calibrate_hyperparams(
            targets, {st.sigma_grid, st.nq_grid}, fitted_cfg, st.sim_impressions,
            tspr::derive_seed(cfg.master_seed, tspr::stream::kCalibration, 1));
        fitted_cfg.sigma = search.best.sigma;
        fitted_cfg.n_q.max = search.best.n_q;
        if (fitted_cfg.n_q.min > search.best.n_q) fitted_cfg.n_q.min = search.best.n_q;
        std::printf("grid best: sigma %.3f, n_q %d (loss %.5f)\n", search.best.sigma,
                    search.best.n_q, search.best.loss);
        auto out = tspr::csv::open_output(dir / "hyper_surface.csv");
        out << "sigma,n_q,loss\n";
        char buf[120];
        for (const auto& c : search.surface) {
            std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g\n", c.sigma, c.n_q, c.loss);
            out << buf;
        }
        outputs.push_back("hyper_surface.csv");
        results["grid_best"] = {{"sigma", search.best.sigma},
                                {"n_q", search.best.n_q},
                                {"loss", search.best.loss}};
    }

    // 7. Hold-out CTR curve comparison.
    const auto sim_ctr = tspr::simulate_ctr_by_rank(
        fitted_cfg, st.sim_impressions, tspr::derive_seed(cfg.master_seed, tspr::stream::kCalibration, 2),
        static_cast<int>(targets.ctr_by_rank.size()));
    double mae = 0.0;
    const std::size_t n_ranks = std::min(sim_ctr.size(), targets.ctr_by_rank.size());
    {
        auto out = tspr::csv::open_output(dir / "ctr_curve.csv");
        out << "rank,empirical,simulated\n";
        char buf[120];
        for (std::size_t k = 0; k < n_ranks; ++k) {
            mae += std::abs(sim_ctr[k] - targets.ctr_by_rank[k]);
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k + 1, targets.ctr_by_rank[k],
                          sim_ctr[k]);
            out << buf;
        }
        outputs.push_back("ctr_curve.csv");
    }
    mae = n_ranks == 0 ? 0.0 : mae / static_cast<double>(n_ranks);
    std::printf("hold-out CTR curve MAE: %.5f over %zu ranks\n", mae, n_ranks);

    // 8. Treatment size calibration on the fitted configuration.
    tspr::FittedParams fitted{fitted_cfg.behavior.click, fitted_cfg.behavior.booking,
                              fitted_cfg.sigma, fitted_cfg.n_q.max, std::nullopt};
    if (!st.skip_delta) {
        const auto cal = tspr::calibrate_delta(fitted_cfg, cfg.target_drop, cfg.delta_tol,
                                               cfg.delta_bracket_lo, cfg.delta_bracket_hi);
        fitted.delta = cal.delta;
        std::printf("delta: %.5f (achieved drop %.5f, target %.5f)\n", cal.delta,
                    cal.achieved_drop, cfg.target_drop);
        results["delta"] = {{"value", cal.delta},
                            {"achieved_drop", cal.achieved_drop},
                            {"target_drop", cfg.target_drop},
                            {"evaluations", cal.evaluations.size()}};
    }

    tspr::write_fitted_params_json(dir / "params.json", fitted);
    outputs.push_back("params.json");
    outputs.push_back("report.json");

    results["click_fit"] = {{"coefficients", click_fit.coefficients},
                            {"converged", click_fit.converged},
                            {"iterations", click_fit.iterations},
                            {"log_likelihood", click_fit.log_likelihood},
                            {"used_random_sorted_rows", used_random},
                            {"warnings", click_fit.warnings}};
    results["booking_fit"] = {{"g_v", booking_fit.coefficients[0]},
                              {"converged", booking_fit.converged},
                              {"warnings", booking_fit.warnings}};
    results["ctr_mae"] = mae;
    write_report(cfg, "calibrate", fitted.delta.value_or(0.0), outputs, results);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliState st;
    CLI::App app{"Two-sided marketplace experiment simulator (prioritized-ranking design)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; keys match long option names");

    auto& cfg = st.cfg;
    app.add_option("--seed", cfg.master_seed, "master RNG seed")->capture_default_str();
    app.add_option("--n-items", cfg.n_items, "item pool size")->capture_default_str();
    app.add_option("--queries", cfg.n_queries, "queries per experiment")->capture_default_str();
    app.add_option("--pre-queries", cfg.n_pre_queries,
                   "pre-experiment queries (0 = same as --queries)")
        ->capture_default_str();
    app.add_option("--p", cfg.design.p, "treatment share p in (0, 0.5)")->capture_default_str();
    app.add_option("--r-min", cfg.design.r_min, "relevance threshold (strict)")
        ->capture_default_str();
    app.add_option("--arm-prob", cfg.design.arm_prob, "probability of arm A")
        ->capture_default_str();
    app.add_option("--sigma", cfg.sigma, "relevance noise scale")->capture_default_str();
    app.add_option("--nq-min", cfg.n_q.min, "min candidates per query")->capture_default_str();
    app.add_option("--nq-max", cfg.n_q.max, "max candidates per query")->capture_default_str();
    app.add_option("--utility-mean", cfg.utility.mean, "item utility mean")
        ->capture_default_str();
    app.add_option("--utility-sd", cfg.utility.stddev, "item utility std dev")
        ->capture_default_str();
    app.add_option("--min-listing-len", cfg.min_listing_len,
                   "drop queries whose filtered listing is shorter")
        ->capture_default_str();

    auto* delta_opt =
        app.add_option("--delta", st.delta_value, "treatment utility reduction (skips calibration)");
    app.add_option("--target-drop", cfg.target_drop,
                   "conversion drop the calibrated delta should induce")
        ->capture_default_str();
    app.add_flag("--treatment-affects-clicks,!--no-treatment-affects-clicks",
                 cfg.treatment_affects_clicks, "apply the utility reduction in the click stage too")
        ->capture_default_str();

    app.add_option("--b0", cfg.behavior.click.b0, "click intercept")->capture_default_str();
    app.add_option("--b-rank", cfg.behavior.click.b_rank, "click position coefficient")
        ->capture_default_str();
    app.add_option("--b-rank2", cfg.behavior.click.b_rank2, "click position^2 coefficient")
        ->capture_default_str();
    app.add_option("--b-v", cfg.behavior.click.b_v, "click utility coefficient")
        ->capture_default_str();
    app.add_option("--b-prior", cfg.behavior.click.b_prior, "click prior-clicks coefficient")
        ->capture_default_str();
    app.add_option("--g-v", cfg.behavior.booking.g_v, "booking utility coefficient")
        ->capture_default_str();
    app.add_option("--outside-utility", cfg.behavior.booking.outside_utility,
                   "booking outside-option utility")
        ->capture_default_str();
    app.add_option("--outcome", st.outcome, "query outcome: booking | clicks | revenue")
        ->capture_default_str();
    app.add_option("--scan", st.scan, "click scan direction: top_down | bottom_up")
        ->capture_default_str();
    app.add_option("--booking-mode", st.booking_mode, "booking stage: logit | independent")
        ->capture_default_str();
    app.add_option("--params", st.params_path, "fitted-parameter JSON to load before running");

    app.add_option("--bootstrap", cfg.bootstrap_replicates, "bootstrap replicates (<2 disables)")
        ->capture_default_str();
    app.add_flag("--resample-pre", cfg.bootstrap_resample_pre,
                 "resample pre-experiment records inside the bootstrap");
    app.add_option("--min-stratum", cfg.min_stratum, "min per-arm queries for a stratum")
        ->capture_default_str();
    app.add_option("--runs", cfg.runs, "Monte Carlo replications")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    app.add_option("--hist-bins", cfg.hist_bins, "histogram bins for monte-carlo")
        ->capture_default_str();
    app.add_option("--delta-tol", cfg.delta_tol, "delta calibration tolerance on the drop")
        ->capture_default_str();
    app.add_option("--bracket-lo", cfg.delta_bracket_lo, "delta bisection lower bracket")
        ->capture_default_str();
    app.add_option("--bracket-hi", cfg.delta_bracket_hi, "delta bisection upper bracket")
        ->capture_default_str();
    app.add_option("--calibration-queries", cfg.n_calibration_queries,
                   "queries per delta-calibration evaluation (0 = same as --queries)")
        ->capture_default_str();
    app.add_option("--r-min-grid", cfg.r_min_grid, "thresholds for the sensitivity sweep");
    app.add_option("--l-values", cfg.l_values, "prefix lengths for diagnose");
    app.add_option("--max-l", cfg.partial_curve_max_l,
                   "largest rank in partial curves (0 = longest listing)")
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

    auto* c_ground = app.add_subcommand("ground-truth", "simulate both counterfactual extremes");
    auto* c_pre = app.add_subcommand("pre-experiment", "modified ranker with no treatment");
    auto* c_tspr = app.add_subcommand("tspr", "one prioritized-ranking experiment");
    auto* c_naive = app.add_subcommand("naive", "one item-side baseline experiment");
    auto* c_mc = app.add_subcommand("monte-carlo", "replicate both experiments R times");
    auto* c_sens = app.add_subcommand("sensitivity", "monte-carlo across an r-min grid");
    auto* c_curves = app.add_subcommand("partial-curves", "mean partial outcomes by rank");
    auto* c_diag = app.add_subcommand("diagnose", "proportionality check of partial effects");
    auto* c_cal = app.add_subcommand("calibrate", "fit behavior parameters from impression logs");

    c_cal->add_option("--impressions", st.impressions_path,
                      "impression-log CSV (omit to generate a synthetic log)");
    c_cal->add_option("--log-n", st.log_n, "synthetic impressions to generate")
        ->capture_default_str();
    c_cal->add_option("--random-frac", st.random_frac, "share of randomly-sorted impressions")
        ->capture_default_str();
    c_cal->add_option("--sigma-grid", st.sigma_grid, "sigma grid for hyperparameter search");
    c_cal->add_option("--nq-grid", st.nq_grid, "n_q grid for hyperparameter search");
    c_cal->add_option("--sim-impressions", st.sim_impressions,
                      "impressions per simulated moment evaluation")
        ->capture_default_str();
    c_cal->add_option("--holdout-every", st.holdout_every,
                      "hold out impressions whose id is divisible by this")
        ->capture_default_str();
    c_cal->add_flag("--skip-delta", st.skip_delta, "skip the treatment-size calibration");
    c_cal->add_flag("--write-log", st.write_log, "write the generated log to impressions.csv");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!st.params_path.empty()) apply_params_file(cfg, st.params_path);
        if (delta_opt->count() > 0) cfg.delta = st.delta_value;
        cfg.behavior.outcome = tspr::outcome_kind_from_string(st.outcome);
        cfg.behavior.scan = tspr::scan_direction_from_string(st.scan);
        cfg.behavior.booking_mode = tspr::booking_mode_from_string(st.booking_mode);
        cfg.validate();

        if (c_ground->parsed()) return cmd_ground_truth(cfg);
        if (c_pre->parsed()) return cmd_pre_experiment(cfg);
        if (c_tspr->parsed()) return cmd_tspr(cfg);
        if (c_naive->parsed()) return cmd_naive(cfg);
        if (c_mc->parsed()) return cmd_monte_carlo(cfg);
        if (c_sens->parsed()) return cmd_sensitivity(cfg);
        if (c_curves->parsed()) return cmd_partial_curves(cfg);
        if (c_diag->parsed()) return cmd_diagnose(cfg);
        if (c_cal->parsed()) return cmd_calibrate(st);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const tspr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const tspr::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const tspr::EstimationError& e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
