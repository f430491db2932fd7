#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tspr/config.hpp"

namespace tspr {

struct ImpressionSchema {
    std::string impression_col = "srch_id";
    std::string position_col = "position";
    std::string item_col = "prop_id";
    std::string click_col = "click_bool";
    std::string booking_col = "booking_bool";
    std::string random_col = "random_bool";
    std::string utility_proxy_col = "v";  // optional column
};

struct ImpressionRow {
    std::int64_t impression_id = 0;
    int position = 0;
    std::int64_t item_id = 0;
    bool clicked = false;
    bool booked = false;
    bool random_sort = false;
    std::optional<double> utility_proxy;
};

struct LoadReport {
    std::vector<ImpressionRow> rows;
    std::size_t n_skipped = 0;     // malformed rows
    std::size_t n_violations = 0;  // booked-without-clicked, duplicate bookings
};

LoadReport load_impressions(const std::filesystem::path& path,
                            const ImpressionSchema& schema = {});
void write_impressions_csv(const std::filesystem::path& path,
                           std::span<const ImpressionRow> rows,
                           const ImpressionSchema& schema = {});

struct FitResult {
    std::vector<double> coefficients;
    double log_likelihood = 0.0;
    double gradient_norm = 0.0;  // max-norm at the returned coefficients
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;
};

// Click design matrix: [1, position, position^2, utility_proxy, prior_clicks]
// with prior_clicks recomputed from the rows of each impression.
struct ClickDesign {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};
ClickDesign build_click_design(std::span<const ImpressionRow> rows);

double logistic_loglik(const ClickDesign& d, const Eigen::VectorXd& beta);
Eigen::VectorXd logistic_loglik_gradient(const ClickDesign& d, const Eigen::VectorXd& beta);

// Damped Newton (IRLS with step halving) on the Bernoulli log-likelihood.
FitResult fit_logistic(const ClickDesign& d, std::vector<double> init = {},
                       double tol = 1e-8, int max_iter = 100);
FitResult fit_click_model(std::span<const ImpressionRow> rows,
                          std::vector<double> init = {}, double tol = 1e-8,
                          int max_iter = 100);

// One choice set per impression: clicked items (x = utility proxy) plus the
// outside option at utility 0; chosen = -1 means the outside option.
struct ChoiceSet {
    std::vector<double> x;
    int chosen = -1;
};
std::vector<ChoiceSet> build_choice_sets(std::span<const ImpressionRow> rows);

double choice_loglik(std::span<const ChoiceSet> sets, double g_v);
double choice_loglik_gradient(std::span<const ChoiceSet> sets, double g_v);

// Conditional-logit MLE for g_v, outside utility fixed at 0.
FitResult fit_booking_model(std::span<const ChoiceSet> sets, double init = 0.0,
                            double tol = 1e-8, int max_iter = 100);

struct MomentTargets {
    std::vector<double> ctr_by_rank;  // index 0 is rank 1
    double clicks_per_impression = 0.0;
    double bookings_per_impression = 0.0;
};

// Moments over relevance-ranked impressions (random-sorted rows excluded).
MomentTargets compute_moments(std::span<const ImpressionRow> rows, int max_rank = 0);

struct HyperGrid {
    std::vector<double> sigmas;
    std::vector<int> n_qs;
};

struct HyperCell {
    double sigma = 0.0;
    int n_q = 0;
    double loss = 0.0;
};

struct HyperSearchResult {
    HyperCell best;
    std::vector<HyperCell> surface;
};

// Grid search matching simulated moments to targets. Every cell simulates
// with the same seed (common random numbers), so the loss per cell does not
// depend on enumeration order. CTR curve points enter with equal weight;
// impression-level rates are normalized by their target values.
HyperSearchResult calibrate_hyperparams(const MomentTargets& targets, const HyperGrid& grid,
                                        const RunConfig& cfg, std::size_t n_sim_impressions,
                                        std::uint64_t seed);

struct DeltaCalibration {
    double delta = 0.0;
    double achieved_drop = 0.0;
    std::vector<std::pair<double, double>> evaluations;  // (delta, drop) in order
};

// Bisection on delta with common random numbers so that
// conversion(none) - conversion(all treated) = target_drop within tol.
DeltaCalibration calibrate_delta(const RunConfig& cfg, double target_drop, double tol,
                                 double bracket_lo, double bracket_hi);

// Synthetic impression log from the simulator: a random_frac share of
// impressions is randomly sorted, the rest relevance-ranked; the utility
// proxy column carries the true v.
std::vector<ImpressionRow> generate_impression_log(const RunConfig& cfg,
                                                   std::size_t n_impressions,
                                                   double random_frac, std::uint64_t seed);

// Simulated CTR by rank over ranked impressions; used for the hold-out
// comparison after calibration.
std::vector<double> simulate_ctr_by_rank(const RunConfig& cfg, std::size_t n_impressions,
                                         std::uint64_t seed, int max_rank = 0);

struct FittedParams {
    ClickParams click;
    BookingParams booking;
    double sigma = 1.0;
    int n_q = 0;  // 0 when hyperparameters were not calibrated
    std::optional<double> delta;
};

void write_fitted_params_json(const std::filesystem::path& path, const FittedParams& p);
FittedParams read_fitted_params_json(const std::filesystem::path& path);

}  // namespace tspr
