#pragma once

#include <string>
#include <vector>

#include "tspr/config.hpp"
#include "tspr/estimators.hpp"
#include "tspr/simulate.hpp"

namespace tspr {

struct GroundTruth {
    double tate = 0.0;
    double conversion_none = 0.0;
    double conversion_all = 0.0;
    double delta = 0.0;
};

// Two extreme scenarios under the unmodified ranker with common random
// numbers: tate = conversion(all treated) - conversion(none treated).
GroundTruth run_ground_truth(const RunConfig& cfg, double delta);

// Modified ranker, fixed partition, delta = 0; returns the mean outcome.
struct PreExperimentResult {
    double ybar0 = 0.0;
    std::vector<QueryRecord> records;
    RunDiagnostics diag;
};
PreExperimentResult run_pre_experiment(const RunConfig& cfg, std::uint64_t run_seed);

struct ExperimentResult {
    EstimateReport report;
    double ybar0 = 0.0;
    std::vector<QueryRecord> records_a;  // TSPR only
    std::vector<QueryRecord> records_b;  // TSPR only
    std::vector<QueryRecord> records;    // naive only
    RunDiagnostics diag;
};

ExperimentResult run_tspr_experiment(const RunConfig& cfg, std::uint64_t run_seed,
                                     double delta, bool keep_records = true);
ExperimentResult run_naive_experiment(const RunConfig& cfg, std::uint64_t run_seed,
                                      double delta, bool keep_records = true);

struct RunRow {
    int run = 0;
    std::string method;
    double theta_hat = 0.0;
    double se = 0.0;
    bool covered_95 = false;
};

struct MethodSummary {
    std::string method;
    double mean = 0.0;
    double stddev = 0.0;  // NaN when fewer than 2 completed runs
    double mean_se = 0.0;
    double coverage = 0.0;  // fraction of runs whose 95% CI covers the truth
    std::size_t n_ok = 0;
    std::size_t n_failed = 0;
};

struct HistBin {
    std::string method;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct MonteCarloSummary {
    GroundTruth truth;
    std::vector<RunRow> rows;
    MethodSummary tspr;
    MethodSummary naive;
    std::vector<HistBin> hist;
};

// R independent replications of both experiments; per-run seeds derive from
// (master_seed, run index), so results are identical for any thread count.
MonteCarloSummary run_monte_carlo(const RunConfig& cfg);

struct SensitivityCell {
    double r_min = 0.0;
    MethodSummary tspr;
    std::size_t n_zero_strata_runs = 0;  // runs with no valid stratum
};

std::vector<SensitivityCell> run_sensitivity(const RunConfig& cfg,
                                             const std::vector<double>& r_min_grid);

struct PartialCurveRow {
    int l = 0;
    std::string scenario;  // "none", "all", "arm_a", "arm_b"
    double mean_partial = 0.0;
};

// Mean partial outcomes by rank for the four scenarios: unmodified ranker
// with no/full treatment, and the two TSPR arms at the configured p.
std::vector<PartialCurveRow> run_partial_outcome_curves(const RunConfig& cfg, double delta);

struct ProportionalityRow {
    int l = 0;
    double theta_l_measured = 0.0;
    double theta_l_predicted = 0.0;
    double rel_deviation = 0.0;
    double se = 0.0;  // Monte Carlo SE of the paired-difference mean
};

// Measures the partial treatment effect of treating exactly the first l
// listed items against the proportionality prediction
// (E[Y^l | control] / E[Y | control]) * tate.
std::vector<ProportionalityRow> diagnose_proportionality(const RunConfig& cfg, double delta,
                                                         const std::vector<int>& l_values);

// cfg.delta when set, otherwise bisection on the calibration sample so the
// all-treated conversion drop matches cfg.target_drop.
double resolve_delta(const RunConfig& cfg);

}  // namespace tspr
