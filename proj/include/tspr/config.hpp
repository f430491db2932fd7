#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tspr/behavior.hpp"
#include "tspr/design.hpp"
#include "tspr/marketplace.hpp"

namespace tspr {

// Full run configuration shared by the CLI subcommands. Defaults are the
// desk-scale setup: 20k queries, p = 0.25, calibrated treatment targeting a
// 0.05 conversion drop. The behavioral coefficients give a steep position
// curve (top-heavy clicks) and a mildly saturated booking choice; the pool is
// large enough that item-assignment noise is negligible next to query noise,
// so query-resampled bootstrap intervals are honest.
struct RunConfig {
    std::uint64_t master_seed = 1;

    // marketplace
    std::size_t n_items = 500000;
    UtilityDist utility{UtilityDist::Kind::Normal, 3.0, 1.0};
    CandidateCountSpec n_q{4, 33};
    double sigma = 0.8;

    // experiment
    std::size_t n_queries = 20000;
    std::size_t n_pre_queries = 0;  // 0 means same as n_queries
    DesignParams design{};
    int min_listing_len = 1;

    // behavior
    BehaviorParams behavior{
        ClickParams{-2.35, -0.60, 0.0, 0.6, 0.0},
        BookingParams{0.46, 0.0},
    };

    // treatment: explicit delta wins; otherwise delta is calibrated so the
    // all-treated conversion drops by target_drop.
    std::optional<double> delta;
    double target_drop = 0.05;
    bool treatment_affects_clicks = true;

    // estimation
    int bootstrap_replicates = 200;
    bool bootstrap_resample_pre = false;
    std::size_t min_stratum = 1;

    // replication
    int runs = 100;
    int threads = 0;  // 0 = hardware concurrency
    int hist_bins = 30;

    // delta calibration
    double delta_tol = 1e-3;
    double delta_bracket_lo = 0.0;
    double delta_bracket_hi = 5.0;
    std::size_t n_calibration_queries = 0;  // 0 means same as n_queries

    // sensitivity / diagnostics grids
    std::vector<double> r_min_grid;
    std::vector<int> l_values;
    int partial_curve_max_l = 0;  // 0 = longest observed listing

    std::string out_dir = "out";

    void validate() const;  // throws ConfigError

    std::size_t pre_queries() const {
        return n_pre_queries == 0 ? n_queries : n_pre_queries;
    }
    std::size_t calibration_queries() const {
        return n_calibration_queries == 0 ? n_queries : n_calibration_queries;
    }
    TreatmentSpec treatment_spec(double resolved_delta) const {
        return TreatmentSpec{resolved_delta, treatment_affects_clicks};
    }
};

OutcomeKind outcome_kind_from_string(const std::string& s);
const char* to_string(OutcomeKind k);
ScanDirection scan_direction_from_string(const std::string& s);
BookingMode booking_mode_from_string(const std::string& s);

}  // namespace tspr
