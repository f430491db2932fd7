#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tspr/records.hpp"
#include "tspr/rng.hpp"

namespace tspr {

struct StratumStats {
    int l = 0;
    std::size_t n_A = 0;
    std::size_t n_B = 0;
    double mean_y_A = 0.0;
    double mean_y_B = 0.0;
    double weight = 0.0;  // renormalized over included strata, sums to 1
};

struct EstimateReport {
    std::string method;  // "tspr" or "naive_is"
    double theta_hat = 0.0;
    double se = 0.0;
    double ybar0 = 0.0;
    std::vector<StratumStats> strata;
    std::size_t n_dropped_strata = 0;
    double dropped_weight = 0.0;  // frequency-weight mass of dropped strata
    std::vector<std::string> warnings;
};

// Mean total outcome of the pre-experiment sample (modified ranker, no
// treatment); the plug-in for the expected all-control outcome.
double estimate_ybar0(std::span<const QueryRecord> pre_records);

// Stratified frequency-weighted estimator. Strata are block lengths l >= 1
// present in both arms with counts >= min_stratum and a positive arm-A mean;
// each stratum contributes ybar0 * (mean_B - mean_A) / mean_A. Weights are
// (n_A_l + n_B_l) / (|A| + |B|) renormalized over included strata.
EstimateReport estimate_tspr(std::span<const QueryRecord> records_a,
                             std::span<const QueryRecord> records_b,
                             double ybar0, std::size_t min_stratum = 1);

// Inverse-probability-weighted item-side baseline:
// sum_T y / (p|Q|) - sum_C y / ((1-p)|Q|), control = everything not Treated.
EstimateReport estimate_naive_is(std::span<const QueryRecord> records, double p);

// Resamples each group with replacement and re-evaluates the estimator
// n_replicates times; returns the sample standard deviation of the replicate
// estimates. Replicate seeds derive from (rng draw, replicate index), so the
// result does not depend on evaluation order. Throws EstimationError when the
// estimator fails in more than half of the replicates.
double bootstrap_se(
    std::span<const std::size_t> group_sizes,
    const std::function<double(const std::vector<std::vector<std::size_t>>&)>& estimator,
    int n_replicates, Rng& rng);

struct BootstrapOptions {
    int replicates = 200;
    bool resample_pre = false;  // re-estimate ybar0 from resampled pre records
    std::size_t min_stratum = 1;
};

// Queries resampled independently within arm A and arm B; ybar0 held fixed
// unless resample_pre is on and pre_records are supplied.
double bootstrap_se_tspr(std::span<const QueryRecord> records_a,
                         std::span<const QueryRecord> records_b,
                         std::span<const QueryRecord> pre_records, double ybar0,
                         const BootstrapOptions& opts, Rng& rng);

double bootstrap_se_naive(std::span<const QueryRecord> records, double p,
                          int n_replicates, Rng& rng);

}  // namespace tspr
