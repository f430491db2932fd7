// Acceptance suite: the ten headline checks, one [PASS]/[FAIL] line each.
// Thresholds are pinned here on purpose; the binary exits nonzero when any
// criterion fails. Expected runtime is a few minutes on one core.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tspr/calibration.hpp"
#include "tspr/design.hpp"
#include "tspr/errors.hpp"
#include "tspr/harness.hpp"

using namespace tspr;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("[%s] %2d %-24s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// E[f(V)] for V ~ N(mean, sd), composite Simpson over +-10 sd.
double normal_expect(const std::function<double(double)>& f, double mean, double sd) {
    const int n = 4000;  // even
    const double lo = mean - 10.0 * sd, hi = mean + 10.0 * sd;
    const double h = (hi - lo) / n;
    constexpr double two_pi = 6.283185307179586476925286766559;
    const auto g = [&](double v) {
        const double z = (v - mean) / sd;
        return f(v) * std::exp(-0.5 * z * z) / (sd * std::sqrt(two_pi));
    };
    double s = g(lo) + g(hi);
    for (int i = 1; i < n; ++i) s += g(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
        return r;
    };
    const auto rx = ranks(xs), ry = ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) mx += rx[i], my += ry[i];
    mx /= n, my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

QueryRecord rec(Arm arm, int l, double y_partial, double y_total = -1.0) {
    QueryRecord r;
    r.arm = arm;
    r.block_length = l;
    r.y_partial = y_partial;
    r.y_total = y_total < 0.0 ? y_partial : y_total;
    return r;
}

// ---------------------------------------------------------------------------

double criterion_1_ground_truth() {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;  // shipped defaults: target_drop = 0.05, 20k queries
    const auto cal = calibrate_delta(cfg, cfg.target_drop, cfg.delta_tol,
                                     cfg.delta_bracket_lo, cfg.delta_bracket_hi);
    const auto gt = run_ground_truth(cfg, cal.delta);
    const bool ok = std::abs(gt.tate - (-0.05)) <= 0.003;
    report(1, "ground-truth", ok,
           fmt("delta=%.4f tate=%.5f target=-0.05 tol=0.003 (%.0fs)", cal.delta, gt.tate,
               elapsed_s(t0)));
    return cal.delta;
}

MonteCarloSummary criteria_2_3_bias(double delta) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;  // 100 runs x 20k queries, p = 0.25
    cfg.delta = delta;
    const auto mc = run_monte_carlo(cfg);

    const double bias_tspr = mc.tspr.mean - mc.truth.tate;
    const bool ok2 = mc.tspr.n_ok == 100 && std::abs(mc.tspr.mean - (-0.05)) <= 0.01;
    report(2, "tspr-bias", ok2,
           fmt("mean=%.5f sd=%.5f n=%zu |mean+0.05|=%.5f tol=0.01 (%.0fs)", mc.tspr.mean,
               mc.tspr.stddev, mc.tspr.n_ok, std::abs(mc.tspr.mean - (-0.05)), elapsed_s(t0)));

    const double bias_naive = mc.naive.mean - mc.truth.tate;
    const double scale = std::abs(mc.naive.mean) / std::abs(mc.truth.tate);
    const double bias_ratio = std::abs(bias_naive) / std::abs(bias_tspr);
    const bool ok3 = mc.naive.n_ok == 100 && scale >= 1.5 && bias_ratio >= 3.0;
    report(3, "naive-overestimates", ok3,
           fmt("naive mean=%.5f truth=%.5f scale=%.2f (>=1.5) bias ratio=%.1f (>=3)",
               mc.naive.mean, mc.truth.tate, scale, bias_ratio));
    return mc;
}

void criterion_4_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    // Independent-outcomes regime: no position effects, per-item Bernoulli
    // booking, no relevance filter, fixed listing length n = 12.
    RunConfig cfg;
    cfg.n_items = 50000;
    cfg.utility = UtilityDist{UtilityDist::Kind::Normal, 0.0, 1.0};
    cfg.n_q = CandidateCountSpec{12, 12};
    // Relevance noise swamps utility: ranks carry no information about v, so
    // every rank is exchangeable and the prefix effect is linear in l. With
    // the filter disabled, sigma has no other effect in this regime.
    cfg.sigma = 1e6;
    cfg.design.r_min = -1e9;
    cfg.behavior.click = ClickParams{-1.0, 0.0, 0.0, 0.6, 0.0};
    cfg.behavior.booking = BookingParams{0.8, 0.0};
    cfg.behavior.booking_mode = BookingMode::IndependentBernoulli;
    const double delta = 0.3;
    cfg.delta = delta;
    cfg.bootstrap_replicates = 0;
    cfg.runs = 200;

    // Per-item booking probability is closed-form, so TATE is an integral
    // over the utility distribution.
    const auto p_book = [&](double v, double d) {
        return sigmoid(cfg.behavior.click.b0 + cfg.behavior.click.b_v * (v - d)) *
               sigmoid(cfg.behavior.booking.g_v * (v - d));
    };
    const double n_listed = 12.0;
    const double theta =
        n_listed * (normal_expect([&](double v) { return p_book(v, delta); }, 0.0, 1.0) -
                    normal_expect([&](double v) { return p_book(v, 0.0); }, 0.0, 1.0));

    const auto mc = run_monte_carlo(cfg);
    const double mc_se_tspr = mc.tspr.stddev / std::sqrt(static_cast<double>(mc.tspr.n_ok));
    const double mc_se_naive = mc.naive.stddev / std::sqrt(static_cast<double>(mc.naive.n_ok));
    const bool ok_tspr = std::abs(mc.tspr.mean - theta) <= 2.0 * mc_se_tspr;
    const bool ok_naive = std::abs(mc.naive.mean - theta) <= 2.0 * mc_se_naive;

    // theta^l = (l/n) theta: measured prefix effects on the analytic line.
    bool ok_prop = true;
    std::ostringstream prop;
    auto prop_cfg = cfg;
    const auto rows = diagnose_proportionality(prop_cfg, delta, {0, 3, 6, 12});
    for (const auto& row : rows) {
        const double predicted = theta * static_cast<double>(row.l) / n_listed;
        const double tol = 4.0 * row.se + 0.01;
        if (std::abs(row.theta_l_measured - predicted) > tol) {
            ok_prop = false;
            prop << " l=" << row.l << " off by "
                 << std::abs(row.theta_l_measured - predicted) << ">" << tol;
        }
    }

    report(4, "oracle-equivalence", ok_tspr && ok_naive && ok_prop,
           fmt("theta*=%.5f tspr %.5f+-%.5f naive %.5f+-%.5f prop:%s (%.0fs)", theta,
               mc.tspr.mean, mc_se_tspr, mc.naive.mean, mc_se_naive,
               ok_prop ? "linear" : prop.str().c_str(), elapsed_s(t0)));
}

void criterion_5_null() {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.delta = 0.0;  // exact null: truth is identically zero
    const auto mc = run_monte_carlo(cfg);
    const double lim_t = 2.0 * mc.tspr.stddev / std::sqrt(100.0);
    const double lim_n = 2.0 * mc.naive.stddev / std::sqrt(100.0);
    const bool means_ok = std::abs(mc.tspr.mean) < lim_t && std::abs(mc.naive.mean) < lim_n;
    const bool cover_ok = mc.tspr.coverage >= 0.90 && mc.tspr.coverage <= 0.99 &&
                          mc.naive.coverage >= 0.90 && mc.naive.coverage <= 0.99;
    report(5, "null-calibration", mc.truth.tate == 0.0 && means_ok && cover_ok,
           fmt("tspr |mean|=%.5f<%.5f cover=%.2f; naive |mean|=%.5f<%.5f cover=%.2f (%.0fs)",
               std::abs(mc.tspr.mean), lim_t, mc.tspr.coverage, std::abs(mc.naive.mean), lim_n,
               mc.naive.coverage, elapsed_s(t0)));
}

void criterion_6_identities() {
    bool ok = true;
    std::ostringstream why;

    // single stratum at l = 2: 0.7 * (0.4 - 0.5) / 0.5 = -0.14
    {
        std::vector<QueryRecord> a{rec(Arm::A, 2, 0.6), rec(Arm::A, 2, 0.4)};
        std::vector<QueryRecord> b{rec(Arm::B, 2, 0.4), rec(Arm::B, 2, 0.4)};
        const auto r = estimate_tspr(a, b, 0.7);
        if (std::abs(r.theta_hat - (-0.14)) > 1e-12) ok = false, why << " single-stratum";
        if (r.strata.size() != 1 || r.strata[0].weight != 1.0) ok = false, why << " weight";
    }
    // two strata, raw weights 4/8 and 4/8, renormalized sum exactly 1
    {
        std::vector<QueryRecord> a{rec(Arm::A, 1, 0.5), rec(Arm::A, 1, 0.5), rec(Arm::A, 1, 0.5),
                                   rec(Arm::A, 2, 0.5)};
        std::vector<QueryRecord> b{rec(Arm::B, 1, 0.5), rec(Arm::B, 2, 0.5), rec(Arm::B, 2, 0.5),
                                   rec(Arm::B, 2, 0.5)};
        const auto r = estimate_tspr(a, b, 1.0);
        if (r.strata.size() != 2 || r.strata[0].weight != 0.5 || r.strata[1].weight != 0.5)
            ok = false, why << " two-strata";
        if (r.strata[0].weight + r.strata[1].weight != 1.0) ok = false, why << " weight-sum";
    }
    // naive: 6/(0.25*100) - 30/(0.75*100) = 0.24 - 0.40 = -0.16
    {
        std::vector<QueryRecord> records(100);
        records[0].per_item.push_back({1, Group::Treated, 6.0});
        records[1].per_item.push_back({2, Group::Untreated, 30.0});
        const auto r = estimate_naive_is(records, 0.25);
        if (std::abs(r.theta_hat - (-0.16)) > 1e-12) ok = false, why << " naive";
    }
    report(6, "estimator-identities", ok,
           ok ? "-0.14, weights 1/2+1/2, -0.16 all exact to 1e-12" : ("failed:" + why.str()));
}

void criterion_7_mle() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream why;

    // intercept-only fit equals logit of the empirical rate
    {
        ClickDesign d;
        d.x = Eigen::MatrixXd::Ones(1000, 1);
        d.y = Eigen::VectorXd::Zero(1000);
        for (int i = 0; i < 250; ++i) d.y(i) = 1.0;
        const auto fit = fit_logistic(d);
        if (std::abs(fit.coefficients[0] - std::log(0.25 / 0.75)) > 1e-6)
            ok = false, why << " intercept";
    }

    // analytic gradients against central differences
    {
        Rng rng(314);
        ClickDesign d;
        d.x = Eigen::MatrixXd(400, 4);
        d.y = Eigen::VectorXd(400);
        for (int i = 0; i < 400; ++i) {
            d.x(i, 0) = 1.0;
            for (int j = 1; j < 4; ++j) d.x(i, j) = 2.0 * draw_uniform(rng) - 1.0;
            d.y(i) = draw_bernoulli(rng, 0.4) ? 1.0 : 0.0;
        }
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd beta(4);
            for (int j = 0; j < 4; ++j) beta(j) = draw_uniform(rng) - 0.5;
            const Eigen::VectorXd g = logistic_loglik_gradient(d, beta);
            for (int j = 0; j < 4; ++j) {
                const double h = 1e-6;
                Eigen::VectorXd up = beta, dn = beta;
                up(j) += h;
                dn(j) -= h;
                const double fd = (logistic_loglik(d, up) - logistic_loglik(d, dn)) / (2 * h);
                worst = std::max(worst, std::abs(fd - g(j)) / std::max(1.0, std::abs(g(j))));
            }
        }
        if (worst > 1e-6) ok = false, why << " click-gradient " << worst;

        std::vector<ChoiceSet> sets(300);
        for (auto& s : sets) {
            const int k = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < k; ++i) s.x.push_back(2.0 * draw_uniform(rng) - 1.0);
            s.chosen = static_cast<int>(rng() % (static_cast<std::size_t>(k) + 1)) - 1;
        }
        double worst_c = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double g_v = 3.0 * (draw_uniform(rng) - 0.5);
            const double h = 1e-6;
            const double fd = (choice_loglik(sets, g_v + h) - choice_loglik(sets, g_v - h)) / (2 * h);
            const double an = choice_loglik_gradient(sets, g_v);
            worst_c = std::max(worst_c, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
        if (worst_c > 1e-6) ok = false, why << " choice-gradient " << worst_c;
    }

    // parameter recovery on 200k simulated rows
    {
        RunConfig cfg;
        cfg.master_seed = 77;
        cfg.n_items = 20000;
        cfg.utility = UtilityDist{UtilityDist::Kind::Normal, 0.0, 1.0};
        cfg.n_q = CandidateCountSpec{10, 10};
        cfg.sigma = 0.5;
        const ClickParams truth{-1.0, -0.1, 0.0, 0.8, 0.3};
        cfg.behavior.click = truth;
        cfg.behavior.booking = BookingParams{1.0, 0.0};
        const auto log = generate_impression_log(cfg, 20000, 1.0,
                                                 derive_seed(cfg.master_seed, stream::kLog));
        if (log.size() != 200000) ok = false, why << " rows=" << log.size();
        const auto fit = fit_click_model(log);
        const double truth_arr[5] = {truth.b0, truth.b_rank, truth.b_rank2, truth.b_v,
                                     truth.b_prior};
        double max_err = 0.0;
        for (int j = 0; j < 5; ++j)
            max_err = std::max(max_err, std::abs(fit.coefficients[static_cast<std::size_t>(j)] -
                                                 truth_arr[j]));
        if (max_err > 0.05) ok = false, why << " click-recovery " << max_err;

        const auto sets = build_choice_sets(log);
        const auto bfit = fit_booking_model(sets);
        if (std::abs(bfit.coefficients[0] - 1.0) > 0.05)
            ok = false, why << " booking-recovery " << bfit.coefficients[0];
    }

    report(7, "mle-correctness", ok,
           ok ? fmt("intercept 1e-6, gradients 1e-6, recovery within 0.05 (%.0fs)", elapsed_s(t0))
              : ("failed:" + why.str()));
}

void criterion_8_sensitivity(double delta) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.delta = delta;
    cfg.runs = 25;
    cfg.bootstrap_replicates = 150;
    const std::vector<double> grid{1.0, 1.2, 1.4, 1.7, 2.0, 2.3};
    const auto cells = run_sensitivity(cfg, grid);

    std::vector<double> means, ses;
    for (const auto& c : cells) {
        means.push_back(c.tspr.mean);
        ses.push_back(c.tspr.mean_se);
    }
    const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
    const double spread = *hi - *lo;
    const double pooled_se = std::accumulate(ses.begin(), ses.end(), 0.0) /
                             static_cast<double>(ses.size());
    const double rho = spearman_rho(grid, ses);
    const bool ok = spread < 2.0 * pooled_se && rho > 0.0;
    report(8, "r-min-sensitivity", ok,
           fmt("spread=%.5f < 2*SE=%.5f, SE rank corr=%.2f (>0) over %zu thresholds (%.0fs)",
               spread, 2.0 * pooled_se, rho, grid.size(), elapsed_s(t0)));
}

void criterion_9_structure() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream why;

    // ranking structure on random instances
    {
        Rng rng(20260814);
        for (int trial = 0; trial < 500 && ok; ++trial) {
            Rng pool_rng(rng());
            auto pool = draw_item_pool(200, UtilityDist{UtilityDist::Kind::Normal, 0.0, 1.0},
                                       pool_rng);
            partition_items(pool, 0.3, pool_rng);
            const int n_q = 1 + static_cast<int>(rng() % 40);
            const auto ids = draw_candidate_ids(pool.size(), n_q, pool_rng);
            const auto cands = score_candidates(pool, ids, 0.5, pool_rng);
            const auto kept = filter_relevant(cands, -0.2);
            const auto la = rank_tspr(kept, Arm::A);
            const auto lb = rank_tspr(kept, Arm::B);

            // universal access: both arms display the same item set
            auto ids_a = la.entries, ids_b = lb.entries;
            auto by_id = [](const ListingEntry& x, const ListingEntry& y) {
                return x.item_id < y.item_id;
            };
            std::sort(ids_a.begin(), ids_a.end(), by_id);
            std::sort(ids_b.begin(), ids_b.end(), by_id);
            if (ids_a.size() != ids_b.size()) ok = false, why << " access-size";
            for (std::size_t i = 0; ok && i < ids_a.size(); ++i)
                if (ids_a[i].item_id != ids_b[i].item_id) ok = false, why << " access-set";

            for (const Arm arm : {Arm::A, Arm::B}) {
                const auto& listing = arm == Arm::A ? la : lb;
                int prev_rank = -1;
                for (std::size_t i = 0; i < listing.entries.size(); ++i) {
                    const auto& e = listing.entries[i];
                    if (e.position != static_cast<int>(i) + 1) ok = false, why << " positions";
                    const int pr = priority_rank(e.group, arm);
                    if (pr < prev_rank) ok = false, why << " block-contiguity";
                    if (i > 0 && pr == prev_rank) {
                        const auto& p = listing.entries[i - 1];
                        if (e.relevance > p.relevance) ok = false, why << " block-order";
                        if (e.relevance == p.relevance && e.item_id < p.item_id)
                            ok = false, why << " tie-break";
                    }
                    prev_rank = pr;
                }
                int lead = 0, total = 0;
                const Group top = prioritized_group(arm);
                for (const auto& e : listing.entries) total += e.group == top ? 1 : 0;
                for (const auto& e : listing.entries) {
                    if (e.group != top) break;
                    ++lead;
                }
                if (block_length(listing, arm) != lead || lead != total)
                    ok = false, why << " block-length";
            }
        }
    }

    // behavioral invariants over simulated queries
    {
        RunConfig cfg;
        cfg.n_items = 3000;
        cfg.utility = UtilityDist{UtilityDist::Kind::Normal, 1.0, 1.0};
        cfg.n_q = CandidateCountSpec{4, 16};
        cfg.design.r_min = 0.5;
        cfg.behavior.click = ClickParams{-0.5, -0.2, 0.0, 0.6, 0.1};
        const auto pool = make_partitioned_pool(cfg, 11);
        const auto plan = TreatmentPlan::treated_group(cfg.treatment_spec(0.6));
        for (std::uint64_t q = 0; q < 2000 && ok; ++q) {
            const auto res = simulate_tspr_query(pool, cfg, plan, 11, stream::kQuery, q);
            if (!res.kept) continue;
            int bookings = 0;
            for (const auto& e : res.listing.entries) {
                bookings += e.booked ? 1 : 0;
                if (e.booked && !e.clicked) ok = false, why << " booked-unclicked";
                if (e.y < 0.0) ok = false, why << " negative-y";
            }
            if (bookings > 1) ok = false, why << " multi-booking";
            const double total = listing_outcome_total(res.listing);
            double prev = 0.0;
            for (int l = 0; l <= static_cast<int>(res.listing.entries.size()); ++l) {
                const double y_l = partial_outcome(res.listing, l);
                if (y_l < prev) ok = false, why << " partial-monotone";
                prev = y_l;
            }
            if (prev != total) ok = false, why << " partial-total";
        }
    }

    // bit-exact reproducibility, independent of the worker count
    {
        RunConfig cfg;
        cfg.n_items = 2000;
        cfg.utility = UtilityDist{UtilityDist::Kind::Normal, 1.0, 1.0};
        cfg.n_q = CandidateCountSpec{4, 12};
        cfg.design.r_min = 0.3;
        cfg.behavior.click = ClickParams{-0.8, -0.2, 0.0, 0.6, 0.0};
        cfg.n_queries = 400;
        cfg.delta = 0.5;
        cfg.runs = 6;
        cfg.bootstrap_replicates = 25;
        cfg.threads = 1;
        const auto m1 = run_monte_carlo(cfg);
        auto cfg4 = cfg;
        cfg4.threads = 4;
        const auto m4 = run_monte_carlo(cfg4);
        if (m1.rows.size() != m4.rows.size()) ok = false, why << " row-count";
        for (std::size_t i = 0; ok && i < m1.rows.size(); ++i) {
            if (m1.rows[i].theta_hat != m4.rows[i].theta_hat ||
                m1.rows[i].se != m4.rows[i].se ||
                m1.rows[i].covered_95 != m4.rows[i].covered_95)
                ok = false, why << " thread-mismatch";
        }
        if (m1.truth.tate != m4.truth.tate) ok = false, why << " truth-mismatch";
    }

    report(9, "structural-invariants", ok,
           ok ? fmt("access, blocks, monotonicity, bookings, thread-invariance (%.0fs)",
                    elapsed_s(t0))
              : ("failed:" + why.str()));
}

void criterion_10_calibration() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream why;

    RunConfig truth_cfg;
    truth_cfg.master_seed = 5;
    truth_cfg.n_items = 30000;
    truth_cfg.utility = UtilityDist{UtilityDist::Kind::Normal, 0.0, 1.0};
    truth_cfg.n_q = CandidateCountSpec{9, 9};
    truth_cfg.sigma = 0.5;
    truth_cfg.behavior.click = ClickParams{-0.8, -0.35, 0.0, 0.7, 0.25};
    truth_cfg.behavior.booking = BookingParams{0.9, 0.0};

    const auto log = generate_impression_log(truth_cfg, 40000, 1.0 / 3.0,
                                             derive_seed(truth_cfg.master_seed, stream::kLog));
    std::vector<ImpressionRow> train, holdout, train_random;
    for (const auto& row : log) {
        if (row.impression_id % 3 == 0)
            holdout.push_back(row);
        else {
            train.push_back(row);
            if (row.random_sort) train_random.push_back(row);
        }
    }

    const auto click_fit = fit_click_model(train_random);
    const auto booking_fit = fit_booking_model(build_choice_sets(train));
    const auto targets = compute_moments(holdout);

    RunConfig sim_cfg = truth_cfg;
    sim_cfg.behavior.click = ClickParams{click_fit.coefficients[0], click_fit.coefficients[1],
                                         click_fit.coefficients[2], click_fit.coefficients[3],
                                         click_fit.coefficients[4]};
    sim_cfg.behavior.booking = BookingParams{booking_fit.coefficients[0], 0.0};

    const HyperGrid grid{{0.3, 0.5, 0.8}, {7, 9, 12}};
    const auto search = calibrate_hyperparams(
        targets, grid, sim_cfg, 20000, derive_seed(truth_cfg.master_seed, stream::kCalibration, 1));
    if (search.best.sigma != 0.5 || search.best.n_q != 9) {
        ok = false;
        why << " best-cell sigma=" << search.best.sigma << " n_q=" << search.best.n_q;
    }

    sim_cfg.sigma = search.best.sigma;
    sim_cfg.n_q = CandidateCountSpec{std::min(search.best.n_q, sim_cfg.n_q.min), search.best.n_q};
    const auto curve = simulate_ctr_by_rank(
        sim_cfg, 20000, derive_seed(truth_cfg.master_seed, stream::kCalibration, 2),
        static_cast<int>(targets.ctr_by_rank.size()));
    double mae = 0.0;
    const std::size_t n_ranks = targets.ctr_by_rank.size();
    for (std::size_t k = 0; k < n_ranks; ++k) {
        const double sim = k < curve.size() ? curve[k] : 0.0;
        mae += std::abs(sim - targets.ctr_by_rank[k]);
    }
    mae /= static_cast<double>(n_ranks);
    if (mae > 0.01) ok = false, why << " mae=" << mae;

    report(10, "calibration-match", ok,
           ok ? fmt("recovered (sigma=%.1f, n_q=%d); hold-out CTR MAE=%.4f <= 0.01 (%.0fs)",
                    search.best.sigma, search.best.n_q, mae, elapsed_s(t0))
              : ("failed:" + why.str()));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("acceptance suite (defaults: 20k queries, p=0.25, 100 runs)\n");

    const double delta = criterion_1_ground_truth();
    criteria_2_3_bias(delta);
    criterion_4_oracle();
    criterion_5_null();
    criterion_6_identities();
    criterion_7_mle();
    criterion_8_sensitivity(delta);
    criterion_9_structure();
    criterion_10_calibration();

    std::printf("%d/10 criteria passed (%.0fs total)\n", 10 - g_failures, elapsed_s(t0));
    return g_failures == 0 ? 0 : 1;
}
