#include "tspr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "tspr/calibration.hpp"
#include "tspr/design.hpp"
#include "tspr/errors.hpp"

namespace tspr {

namespace {

// Deterministic parallel loop: every index owns its work, nothing is shared
// between iterations, so the thread count never changes results.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t run_seed_for(const RunConfig& cfg, int run_index) {
    return derive_seed(cfg.master_seed, stream::kRun, static_cast<std::uint64_t>(run_index));
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

MethodSummary summarize_method(const std::string& method, const std::vector<RunRow>& rows,
                               std::size_t n_failed) {
    MethodSummary s;
    s.method = method;
    s.n_failed = n_failed;
    std::vector<double> thetas, ses;
    std::size_t covered = 0;
    for (const auto& r : rows) {
        if (r.method != method) continue;
        thetas.push_back(r.theta_hat);
        ses.push_back(r.se);
        if (r.covered_95) ++covered;
    }
    s.n_ok = thetas.size();
    s.mean = mean_of(thetas);
    s.stddev = sample_stddev(thetas);
    s.mean_se = mean_of(ses);
    s.coverage = thetas.empty() ? 0.0 : static_cast<double>(covered) / static_cast<double>(thetas.size());
    return s;
}

void append_hist(std::vector<HistBin>& out, const std::string& method,
                 const std::vector<RunRow>& rows, int n_bins) {
    std::vector<double> xs;
    for (const auto& r : rows)
        if (r.method == method) xs.push_back(r.theta_hat);
    if (xs.empty() || n_bins <= 0) return;
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) {  // all estimates identical: one degenerate bin
        out.push_back({method, lo, hi, xs.size()});
        return;
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
    const double width = (hi - lo) / n_bins;
    for (double x : xs) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        if (b >= counts.size()) b = counts.size() - 1;
        ++counts[b];
    }
    for (int b = 0; b < n_bins; ++b)
        out.push_back({method, lo + b * width, lo + (b + 1) * width, counts[static_cast<std::size_t>(b)]});
}

}  // namespace

GroundTruth run_ground_truth(const RunConfig& cfg, double delta) {
    cfg.validate();
    const std::uint64_t seed = derive_seed(cfg.master_seed, stream::kGroundTruth);
    Rng pool_rng = make_rng(seed, stream::kPool);
    const auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    const TreatmentSpec spec = cfg.treatment_spec(delta);
    // Same seed for both scenarios: identical markets, identical behavioral
    // draws, the only difference is the treatment itself.
    const auto none = simulate_unmodified(pool, cfg, TreatmentPlan::none(), seed,
                                          cfg.n_queries, /*keep_items=*/false);
    const auto all = simulate_unmodified(pool, cfg, TreatmentPlan::all(spec), seed,
                                         cfg.n_queries, /*keep_items=*/false);
    GroundTruth gt;
    gt.conversion_none = none.mean_outcome;
    gt.conversion_all = all.mean_outcome;
    gt.tate = all.mean_outcome - none.mean_outcome;
    gt.delta = delta;
    return gt;
}

PreExperimentResult run_pre_experiment(const RunConfig& cfg, std::uint64_t run_seed) {
    cfg.validate();
    const auto pool = make_partitioned_pool(cfg, run_seed);
    auto sim = simulate_tspr(pool, cfg, TreatmentPlan::none(), run_seed, cfg.pre_queries(),
                             stream::kPreQuery, /*tag_pre_experiment=*/true);
    PreExperimentResult out;
    out.diag = sim.diag;
    out.records.reserve(sim.records_a.size() + sim.records_b.size());
    for (auto& r : sim.records_a) out.records.push_back(std::move(r));
    for (auto& r : sim.records_b) out.records.push_back(std::move(r));
    std::sort(out.records.begin(), out.records.end(),
              [](const QueryRecord& a, const QueryRecord& b) { return a.query_id < b.query_id; });
    out.ybar0 = estimate_ybar0(out.records);
    return out;
}

ExperimentResult run_tspr_experiment(const RunConfig& cfg, std::uint64_t run_seed,
                                     double delta, bool keep_records) {
    cfg.validate();
    const auto pool = make_partitioned_pool(cfg, run_seed);
    auto pre = simulate_tspr(pool, cfg, TreatmentPlan::none(), run_seed, cfg.pre_queries(),
                             stream::kPreQuery, /*tag_pre_experiment=*/true);
    std::vector<QueryRecord> pre_records;
    pre_records.reserve(pre.records_a.size() + pre.records_b.size());
    for (auto& r : pre.records_a) pre_records.push_back(std::move(r));
    for (auto& r : pre.records_b) pre_records.push_back(std::move(r));
    const double ybar0 = estimate_ybar0(pre_records);

    const auto plan = TreatmentPlan::treated_group(cfg.treatment_spec(delta));
    auto sim = simulate_tspr(pool, cfg, plan, run_seed, cfg.n_queries, stream::kQuery);

    ExperimentResult out;
    out.ybar0 = ybar0;
    out.diag = sim.diag;
    out.report = estimate_tspr(sim.records_a, sim.records_b, ybar0, cfg.min_stratum);
    if (cfg.bootstrap_replicates > 1) {
        BootstrapOptions opts;
        opts.replicates = cfg.bootstrap_replicates;
        opts.resample_pre = cfg.bootstrap_resample_pre;
        opts.min_stratum = cfg.min_stratum;
        Rng rng = make_rng(run_seed, stream::kBootstrap);
        out.report.se = bootstrap_se_tspr(sim.records_a, sim.records_b, pre_records,
                                          ybar0, opts, rng);
    }
    if (keep_records) {
        out.records_a = std::move(sim.records_a);
        out.records_b = std::move(sim.records_b);
    }
    return out;
}

ExperimentResult run_naive_experiment(const RunConfig& cfg, std::uint64_t run_seed,
                                      double delta, bool keep_records) {
    cfg.validate();
    Rng pool_rng = make_rng(run_seed, stream::kPool);
    auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    Rng part_rng = make_rng(run_seed, stream::kPartition);
    partition_items_binary(pool, cfg.design.p, part_rng);

    const auto plan = TreatmentPlan::treated_group(cfg.treatment_spec(delta));
    auto sim = simulate_unmodified(pool, cfg, plan, run_seed, cfg.n_queries,
                                   /*keep_items=*/true);

    ExperimentResult out;
    out.diag = sim.diag;
    out.report = estimate_naive_is(sim.records, cfg.design.p);
    if (cfg.bootstrap_replicates > 1) {
        Rng rng = make_rng(run_seed, stream::kBootstrap);
        out.report.se = bootstrap_se_naive(sim.records, cfg.design.p,
                                           cfg.bootstrap_replicates, rng);
    }
    if (keep_records) out.records = std::move(sim.records);
    return out;
}

MonteCarloSummary run_monte_carlo(const RunConfig& cfg) {
    cfg.validate();
    const double delta = resolve_delta(cfg);

    MonteCarloSummary out;
    out.truth = run_ground_truth(cfg, delta);

    struct Slot {
        bool tspr_ok = false, naive_ok = false;
        RunRow tspr, naive;
    };
    const auto n_runs = static_cast<std::size_t>(cfg.runs);
    std::vector<Slot> slots(n_runs);
    const double truth = out.truth.tate;

    parallel_for(n_runs, cfg.threads, [&](std::size_t r) {
        const std::uint64_t seed = run_seed_for(cfg, static_cast<int>(r));
        Slot& slot = slots[r];
        try {
            auto res = run_tspr_experiment(cfg, seed, delta, /*keep_records=*/false);
            slot.tspr = {static_cast<int>(r), "tspr", res.report.theta_hat, res.report.se,
                         std::abs(res.report.theta_hat - truth) <= 1.96 * res.report.se};
            slot.tspr_ok = true;
        } catch (const EstimationError&) {
            slot.tspr_ok = false;
        }
        try {
            auto res = run_naive_experiment(cfg, seed, delta, /*keep_records=*/false);
            slot.naive = {static_cast<int>(r), "naive_is", res.report.theta_hat, res.report.se,
                          std::abs(res.report.theta_hat - truth) <= 1.96 * res.report.se};
            slot.naive_ok = true;
        } catch (const EstimationError&) {
            slot.naive_ok = false;
        }
    });

    std::size_t tspr_failed = 0, naive_failed = 0;
    for (const auto& s : slots) {
        if (s.tspr_ok)
            out.rows.push_back(s.tspr);
        else
            ++tspr_failed;
        if (s.naive_ok)
            out.rows.push_back(s.naive);
        else
            ++naive_failed;
    }
    out.tspr = summarize_method("tspr", out.rows, tspr_failed);
    out.naive = summarize_method("naive_is", out.rows, naive_failed);
    append_hist(out.hist, "tspr", out.rows, cfg.hist_bins);
    append_hist(out.hist, "naive_is", out.rows, cfg.hist_bins);
    return out;
}

std::vector<SensitivityCell> run_sensitivity(const RunConfig& cfg,
                                             const std::vector<double>& r_min_grid) {
    cfg.validate();
    if (r_min_grid.empty()) throw ConfigError("sensitivity: empty r_min grid");
    const double delta = resolve_delta(cfg);
    const GroundTruth truth = run_ground_truth(cfg, delta);

    std::vector<SensitivityCell> cells;
    cells.reserve(r_min_grid.size());
    for (double r_min : r_min_grid) {
        RunConfig cell_cfg = cfg;
        cell_cfg.design.r_min = r_min;
        cell_cfg.validate();

        const auto n_runs = static_cast<std::size_t>(cfg.runs);
        struct Slot {
            bool ok = false;
            RunRow row;
        };
        std::vector<Slot> slots(n_runs);
        // Same run seeds for every grid point: cells differ only in r_min.
        parallel_for(n_runs, cfg.threads, [&](std::size_t r) {
            const std::uint64_t seed = run_seed_for(cell_cfg, static_cast<int>(r));
            try {
                auto res = run_tspr_experiment(cell_cfg, seed, delta, /*keep_records=*/false);
                slots[r].row = {static_cast<int>(r), "tspr", res.report.theta_hat, res.report.se,
                                std::abs(res.report.theta_hat - truth.tate) <= 1.96 * res.report.se};
                slots[r].ok = true;
            } catch (const EstimationError&) {
                slots[r].ok = false;
            }
        });

        SensitivityCell cell;
        cell.r_min = r_min;
        std::vector<RunRow> rows;
        for (const auto& s : slots)
            if (s.ok)
                rows.push_back(s.row);
            else
                ++cell.n_zero_strata_runs;
        cell.tspr = summarize_method("tspr", rows, cell.n_zero_strata_runs);
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::vector<PartialCurveRow> run_partial_outcome_curves(const RunConfig& cfg, double delta) {
    cfg.validate();
    const TreatmentSpec spec = cfg.treatment_spec(delta);
    const int max_l = cfg.partial_curve_max_l > 0 ? cfg.partial_curve_max_l : cfg.n_q.max;
    if (max_l <= 0) throw ConfigError("partial curves: no positive rank to evaluate");

    struct Acc {
        std::vector<double> sums;
        std::size_t n = 0;
        explicit Acc(int l) : sums(static_cast<std::size_t>(l), 0.0) {}
        void add(const Listing& listing) {
            ++n;
            // Saturating prefix: past the end of the listing Y^l stays at Y.
            double run = 0.0;
            const auto len = listing.entries.size();
            for (std::size_t l = 0; l < sums.size(); ++l) {
                if (l < len) run += listing.entries[l].y;
                sums[l] += run;
            }
        }
    };
    Acc none(max_l), all(max_l), arm_a(max_l), arm_b(max_l);

    const auto plan_none = TreatmentPlan::none();
    const auto plan_all = TreatmentPlan::all(spec);
    const auto plan_group = TreatmentPlan::treated_group(spec);
    for (int r = 0; r < cfg.runs; ++r) {
        const std::uint64_t seed = run_seed_for(cfg, r);
        const auto pool = make_partitioned_pool(cfg, seed);
        for (std::size_t q = 0; q < cfg.n_queries; ++q) {
            none.add(simulate_unmodified_query(pool, cfg, plan_none, seed, q));
            all.add(simulate_unmodified_query(pool, cfg, plan_all, seed, q));
            auto res = simulate_tspr_query(pool, cfg, plan_group, seed, stream::kQuery, q);
            if (!res.kept) continue;
            (res.arm == Arm::A ? arm_a : arm_b).add(res.listing);
        }
    }

    std::vector<PartialCurveRow> rows;
    rows.reserve(static_cast<std::size_t>(max_l) * 4);
    const auto emit = [&](const char* name, const Acc& acc) {
        for (int l = 1; l <= max_l; ++l) {
            const double mean =
                acc.n == 0 ? 0.0
                           : acc.sums[static_cast<std::size_t>(l - 1)] / static_cast<double>(acc.n);
            rows.push_back({l, name, mean});
        }
    };
    emit("none", none);
    emit("all", all);
    emit("arm_a", arm_a);
    emit("arm_b", arm_b);
    return rows;
}

std::vector<ProportionalityRow> diagnose_proportionality(const RunConfig& cfg, double delta,
                                                         const std::vector<int>& l_values) {
    cfg.validate();
    if (l_values.empty()) throw ConfigError("proportionality: empty l grid");
    for (int l : l_values)
        if (l < 0) throw ConfigError("proportionality: negative l");
    const TreatmentSpec spec = cfg.treatment_spec(delta);
    const GroundTruth truth = run_ground_truth(cfg, delta);

    const std::uint64_t seed = derive_seed(cfg.master_seed, stream::kGroundTruth, 1);
    Rng pool_rng = make_rng(seed, stream::kPool);
    const auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    const auto plan_none = TreatmentPlan::none();

    struct Acc {
        double sum_d = 0.0, sum_d2 = 0.0;  // treated-first-l minus control, paired
        double sum_partial_ctrl = 0.0;
    };
    std::vector<Acc> acc(l_values.size());
    double sum_total_ctrl = 0.0;

    for (std::size_t q = 0; q < cfg.n_queries; ++q) {
        const Listing ctrl = simulate_unmodified_query(pool, cfg, plan_none, seed, q);
        const auto len = static_cast<int>(ctrl.entries.size());
        sum_total_ctrl += listing_outcome_total(ctrl);
        for (std::size_t j = 0; j < l_values.size(); ++j) {
            const int l_eff = std::min(l_values[j], len);
            const Listing treated =
                simulate_unmodified_query(pool, cfg, TreatmentPlan::first_l(spec, l_values[j]), seed, q);
            const double d = partial_outcome(treated, l_eff) - partial_outcome(ctrl, l_eff);
            acc[j].sum_d += d;
            acc[j].sum_d2 += d * d;
            acc[j].sum_partial_ctrl += partial_outcome(ctrl, l_eff);
        }
    }

    const auto n = static_cast<double>(cfg.n_queries);
    if (n <= 0) throw ConfigError("proportionality: n_queries must be positive");
    const double mean_total_ctrl = sum_total_ctrl / n;
    std::vector<ProportionalityRow> rows;
    rows.reserve(l_values.size());
    for (std::size_t j = 0; j < l_values.size(); ++j) {
        ProportionalityRow row;
        row.l = l_values[j];
        row.theta_l_measured = acc[j].sum_d / n;
        const double mean_partial = acc[j].sum_partial_ctrl / n;
        row.theta_l_predicted =
            mean_total_ctrl == 0.0 ? 0.0 : truth.tate * mean_partial / mean_total_ctrl;
        row.rel_deviation = row.theta_l_predicted == 0.0
                                ? 0.0
                                : (row.theta_l_measured - row.theta_l_predicted) /
                                      std::abs(row.theta_l_predicted);
        const double var = n < 2 ? 0.0
                                 : (acc[j].sum_d2 - acc[j].sum_d * acc[j].sum_d / n) / (n - 1.0);
        row.se = std::sqrt(std::max(0.0, var) / n);
        rows.push_back(row);
    }
    return rows;
}

double resolve_delta(const RunConfig& cfg) {
    if (cfg.delta) return *cfg.delta;
    if (cfg.target_drop == 0.0) return 0.0;
    return calibrate_delta(cfg, cfg.target_drop, cfg.delta_tol, cfg.delta_bracket_lo,
                           cfg.delta_bracket_hi)
        .delta;
}

}  // namespace tspr
