#include "tspr/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "tspr/csv.hpp"
#include "tspr/errors.hpp"
#include "tspr/simulate.hpp"

namespace tspr {

namespace {

int find_col(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

bool parse_bool01(const std::string& s, bool& out) {
    if (s == "0") {
        out = false;
        return true;
    }
    if (s == "1") {
        out = true;
        return true;
    }
    return false;
}

}  // namespace

LoadReport load_impressions(const std::filesystem::path& path, const ImpressionSchema& schema) {
    auto in = csv::open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty impression file: " + path.string());
    const auto header = csv::split_line(line);

    const int c_imp = find_col(header, schema.impression_col);
    const int c_pos = find_col(header, schema.position_col);
    const int c_item = find_col(header, schema.item_col);
    const int c_click = find_col(header, schema.click_col);
    const int c_book = find_col(header, schema.booking_col);
    const int c_rand = find_col(header, schema.random_col);   // optional
    const int c_proxy = find_col(header, schema.utility_proxy_col);  // optional
    if (c_imp < 0 || c_pos < 0 || c_item < 0 || c_click < 0 || c_book < 0)
        throw DataError("impression file missing required columns: " + path.string());

    LoadReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = csv::split_line(line);
        const auto need = static_cast<std::size_t>(
            std::max({c_imp, c_pos, c_item, c_click, c_book, c_rand, c_proxy}) + 1);
        if (fields.size() < need) {
            ++report.n_skipped;
            continue;
        }
        ImpressionRow row;
        try {
            row.impression_id = std::stoll(fields[static_cast<std::size_t>(c_imp)]);
            row.position = std::stoi(fields[static_cast<std::size_t>(c_pos)]);
            row.item_id = std::stoll(fields[static_cast<std::size_t>(c_item)]);
            bool ok = parse_bool01(fields[static_cast<std::size_t>(c_click)], row.clicked) &&
                      parse_bool01(fields[static_cast<std::size_t>(c_book)], row.booked);
            if (c_rand >= 0) ok = ok && parse_bool01(fields[static_cast<std::size_t>(c_rand)], row.random_sort);
            if (!ok || row.position < 1) {
                ++report.n_skipped;
                continue;
            }
            if (c_proxy >= 0 && !fields[static_cast<std::size_t>(c_proxy)].empty())
                row.utility_proxy = std::stod(fields[static_cast<std::size_t>(c_proxy)]);
        } catch (const std::exception&) {
            ++report.n_skipped;
            continue;
        }
        if (row.booked && !row.clicked) {  // booking implies a click
            ++report.n_violations;
            continue;
        }
        report.rows.push_back(row);
    }

    // At most one booking per impression: later duplicates are rejected too.
    std::unordered_map<std::int64_t, bool> seen_booking;
    std::erase_if(report.rows, [&](const ImpressionRow& row) {
        if (!row.booked) return false;
        const bool inserted = seen_booking.try_emplace(row.impression_id, true).second;
        if (!inserted) ++report.n_violations;
        return !inserted;
    });
    return report;
}

void write_impressions_csv(const std::filesystem::path& path,
                           std::span<const ImpressionRow> rows, const ImpressionSchema& schema) {
    auto out = csv::open_output(path);
    out << schema.impression_col << ',' << schema.position_col << ',' << schema.item_col << ','
        << schema.click_col << ',' << schema.booking_col << ',' << schema.random_col << ','
        << schema.utility_proxy_col << '\n';
    char buf[64];
    for (const auto& r : rows) {
        out << r.impression_id << ',' << r.position << ',' << r.item_id << ','
            << int(r.clicked) << ',' << int(r.booked) << ',' << int(r.random_sort) << ',';
        if (r.utility_proxy) {
            std::snprintf(buf, sizeof buf, "%.17g", *r.utility_proxy);
            out << buf;
        }
        out << '\n';
    }
}

ClickDesign build_click_design(std::span<const ImpressionRow> rows) {
    if (rows.empty()) throw DataError("click design: no rows");
    // Group row indices by impression, order within each impression by position.
    std::map<std::int64_t, std::vector<std::size_t>> by_imp;
    for (std::size_t i = 0; i < rows.size(); ++i) by_imp[rows[i].impression_id].push_back(i);

    ClickDesign d;
    d.x.resize(static_cast<Eigen::Index>(rows.size()), 5);
    d.y.resize(static_cast<Eigen::Index>(rows.size()));
    Eigen::Index out = 0;
    for (auto& [imp, idx] : by_imp) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return rows[a].position < rows[b].position;
        });
        int prior = 0;
        for (std::size_t i : idx) {
            const auto& r = rows[i];
            const auto pos = static_cast<double>(r.position);
            d.x(out, 0) = 1.0;
            d.x(out, 1) = pos;
            d.x(out, 2) = pos * pos;
            d.x(out, 3) = r.utility_proxy.value_or(0.0);
            d.x(out, 4) = static_cast<double>(prior);
            d.y(out) = r.clicked ? 1.0 : 0.0;
            ++out;
            if (r.clicked) ++prior;
        }
    }
    return d;
}

double logistic_loglik(const ClickDesign& d, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = d.x * beta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double e = eta(i);
        // log(1 + exp(e)) without overflow
        const double log1pe = std::max(e, 0.0) + std::log1p(std::exp(-std::abs(e)));
        ll += d.y(i) * e - log1pe;
    }
    return ll;
}

Eigen::VectorXd logistic_loglik_gradient(const ClickDesign& d, const Eigen::VectorXd& beta) {
    const Eigen::VectorXd eta = d.x * beta;
    Eigen::VectorXd mu(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) mu(i) = sigmoid(eta(i));
    return d.x.transpose() * (d.y - mu);
}

FitResult fit_logistic(const ClickDesign& d, std::vector<double> init, double tol, int max_iter) {
    const Eigen::Index k = d.x.cols();
    if (!init.empty() && static_cast<Eigen::Index>(init.size()) != k)
        throw ConfigError("fit_logistic: init size does not match design");
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    for (Eigen::Index j = 0; j < k && !init.empty(); ++j) beta(j) = init[static_cast<std::size_t>(j)];

    FitResult res;
    double ll = logistic_loglik(d, beta);
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        const Eigen::VectorXd grad = logistic_loglik_gradient(d, beta);
        res.gradient_norm = grad.lpNorm<Eigen::Infinity>();
        if (res.gradient_norm < tol) {
            res.converged = true;
            break;
        }
        const Eigen::VectorXd eta = d.x * beta;
        Eigen::VectorXd w(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            const double mu = sigmoid(eta(i));
            w(i) = mu * (1.0 - mu);
        }
        Eigen::MatrixXd h = d.x.transpose() * w.asDiagonal() * d.x;
        h.diagonal().array() += 1e-10;  // guards the ldlt under quasi-separation
        const Eigen::VectorXd step = h.ldlt().solve(grad);

        // Damped update: halve until the log-likelihood does not decrease
        // (up to the roundoff noise of a large summed likelihood).
        const double slack = 1e-10 * (1.0 + std::abs(ll));
        double scale = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half, scale *= 0.5) {
            const Eigen::VectorXd cand = beta + scale * step;
            const double cand_ll = logistic_loglik(d, cand);
            if (cand_ll >= ll - slack) {
                beta = cand;
                ll = cand_ll;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // stalled at numerical precision
    }
    res.gradient_norm = logistic_loglik_gradient(d, beta).lpNorm<Eigen::Infinity>();
    if (res.gradient_norm < tol) res.converged = true;
    res.log_likelihood = logistic_loglik(d, beta);
    res.coefficients.assign(beta.data(), beta.data() + beta.size());
    if (!res.converged) res.warnings.push_back("logistic fit did not converge");
    if (beta.lpNorm<Eigen::Infinity>() > 30.0)
        res.warnings.push_back("large coefficients: possible separation");
    return res;
}

FitResult fit_click_model(std::span<const ImpressionRow> rows, std::vector<double> init,
                          double tol, int max_iter) {
    return fit_logistic(build_click_design(rows), std::move(init), tol, max_iter);
}

std::vector<ChoiceSet> build_choice_sets(std::span<const ImpressionRow> rows) {
    std::map<std::int64_t, std::vector<std::size_t>> by_imp;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].clicked) by_imp[rows[i].impression_id].push_back(i);

    std::vector<ChoiceSet> sets;
    sets.reserve(by_imp.size());
    for (auto& [imp, idx] : by_imp) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return rows[a].position < rows[b].position;
        });
        ChoiceSet set;
        for (std::size_t i : idx) {
            if (rows[i].booked) set.chosen = static_cast<int>(set.x.size());
            set.x.push_back(rows[i].utility_proxy.value_or(0.0));
        }
        sets.push_back(std::move(set));
    }
    return sets;
}

double choice_loglik(std::span<const ChoiceSet> sets, double g_v) {
    double ll = 0.0;
    for (const auto& s : sets) {
        double m = 0.0;  // outside utility
        for (double x : s.x) m = std::max(m, g_v * x);
        double denom = std::exp(-m);  // the outside option
        for (double x : s.x) denom += std::exp(g_v * x - m);
        const double chosen_u = s.chosen < 0 ? 0.0 : g_v * s.x[static_cast<std::size_t>(s.chosen)];
        ll += chosen_u - m - std::log(denom);
    }
    return ll;
}

double choice_loglik_gradient(std::span<const ChoiceSet> sets, double g_v) {
    double grad = 0.0;
    for (const auto& s : sets) {
        double m = 0.0;
        for (double x : s.x) m = std::max(m, g_v * x);
        double denom = std::exp(-m), xsum = 0.0;
        for (double x : s.x) {
            const double w = std::exp(g_v * x - m);
            denom += w;
            xsum += x * w;
        }
        const double x_chosen = s.chosen < 0 ? 0.0 : s.x[static_cast<std::size_t>(s.chosen)];
        grad += x_chosen - xsum / denom;
    }
    return grad;
}

FitResult fit_booking_model(std::span<const ChoiceSet> sets, double init, double tol,
                            int max_iter) {
    if (sets.empty()) throw DataError("booking fit: no choice sets");
    double g = init;
    FitResult res;
    double ll = choice_loglik(sets, g);
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        const double grad = choice_loglik_gradient(sets, g);
        res.gradient_norm = std::abs(grad);
        if (res.gradient_norm < tol) {
            res.converged = true;
            break;
        }
        // Observed information (negated second derivative), always >= 0.
        double info = 0.0;
        for (const auto& s : sets) {
            double m = 0.0;
            for (double x : s.x) m = std::max(m, g * x);
            double denom = std::exp(-m), xsum = 0.0, x2sum = 0.0;
            for (double x : s.x) {
                const double w = std::exp(g * x - m);
                denom += w;
                xsum += x * w;
                x2sum += x * x * w;
            }
            const double ex = xsum / denom;
            info += x2sum / denom - ex * ex;
        }
        if (info < 1e-12) {
            res.warnings.push_back("degenerate choice data: no curvature");
            break;
        }
        const double step = grad / info;
        const double slack = 1e-10 * (1.0 + std::abs(ll));
        double scale = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half, scale *= 0.5) {
            const double cand = g + scale * step;
            const double cand_ll = choice_loglik(sets, cand);
            if (cand_ll >= ll - slack) {
                g = cand;
                ll = cand_ll;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    res.gradient_norm = std::abs(choice_loglik_gradient(sets, g));
    if (res.gradient_norm < tol) res.converged = true;
    res.log_likelihood = choice_loglik(sets, g);
    res.coefficients = {g};
    if (!res.converged && res.warnings.empty())
        res.warnings.push_back("booking fit did not converge");
    return res;
}

MomentTargets compute_moments(std::span<const ImpressionRow> rows, int max_rank) {
    MomentTargets t;
    std::vector<double> click_sum;
    std::vector<std::size_t> n_at_rank;
    std::unordered_map<std::int64_t, bool> imps;
    double clicks = 0.0, bookings = 0.0;
    for (const auto& r : rows) {
        if (r.random_sort) continue;  // ranked traffic only
        imps.try_emplace(r.impression_id, true);
        clicks += r.clicked ? 1.0 : 0.0;
        bookings += r.booked ? 1.0 : 0.0;
        if (max_rank > 0 && r.position > max_rank) continue;
        const auto k = static_cast<std::size_t>(r.position);
        if (click_sum.size() < k) {
            click_sum.resize(k, 0.0);
            n_at_rank.resize(k, 0);
        }
        click_sum[k - 1] += r.clicked ? 1.0 : 0.0;
        ++n_at_rank[k - 1];
    }
    if (imps.empty()) throw DataError("moments: no ranked impressions");
    t.ctr_by_rank.resize(click_sum.size(), 0.0);
    for (std::size_t k = 0; k < click_sum.size(); ++k)
        t.ctr_by_rank[k] = n_at_rank[k] == 0 ? 0.0 : click_sum[k] / static_cast<double>(n_at_rank[k]);
    const auto n = static_cast<double>(imps.size());
    t.clicks_per_impression = clicks / n;
    t.bookings_per_impression = bookings / n;
    return t;
}

namespace {

MomentTargets simulated_moments(const RunConfig& cfg, std::size_t n_impressions,
                                std::uint64_t seed, int max_rank) {
    if (n_impressions == 0) throw ConfigError("moment simulation: zero impressions");
    Rng pool_rng = make_rng(seed, stream::kPool);
    const auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    const auto plan = TreatmentPlan::none();

    MomentTargets t;
    std::vector<double> click_sum;
    std::vector<std::size_t> n_at_rank;
    double clicks = 0.0, bookings = 0.0;
    for (std::size_t q = 0; q < n_impressions; ++q) {
        const Listing listing = simulate_unmodified_query(pool, cfg, plan, seed, q);
        for (const auto& e : listing.entries) {
            clicks += e.clicked ? 1.0 : 0.0;
            bookings += e.booked ? 1.0 : 0.0;
            if (max_rank > 0 && e.position > max_rank) continue;
            const auto k = static_cast<std::size_t>(e.position);
            if (click_sum.size() < k) {
                click_sum.resize(k, 0.0);
                n_at_rank.resize(k, 0);
            }
            click_sum[k - 1] += e.clicked ? 1.0 : 0.0;
            ++n_at_rank[k - 1];
        }
    }
    t.ctr_by_rank.resize(click_sum.size(), 0.0);
    for (std::size_t k = 0; k < click_sum.size(); ++k)
        t.ctr_by_rank[k] = n_at_rank[k] == 0 ? 0.0 : click_sum[k] / static_cast<double>(n_at_rank[k]);
    t.clicks_per_impression = clicks / static_cast<double>(n_impressions);
    t.bookings_per_impression = bookings / static_cast<double>(n_impressions);
    return t;
}

double moment_loss(const MomentTargets& target, const MomentTargets& sim) {
    double loss = 0.0;
    for (std::size_t k = 0; k < target.ctr_by_rank.size(); ++k) {
        const double s = k < sim.ctr_by_rank.size() ? sim.ctr_by_rank[k] : 0.0;
        const double d = s - target.ctr_by_rank[k];
        loss += d * d;
    }
    const auto rate_term = [](double tgt, double s) {
        const double d = tgt == 0.0 ? s : (s - tgt) / tgt;
        return d * d;
    };
    loss += rate_term(target.clicks_per_impression, sim.clicks_per_impression);
    loss += rate_term(target.bookings_per_impression, sim.bookings_per_impression);
    return loss;
}

}  // namespace

HyperSearchResult calibrate_hyperparams(const MomentTargets& targets, const HyperGrid& grid,
                                        const RunConfig& cfg, std::size_t n_sim_impressions,
                                        std::uint64_t seed) {
    if (grid.sigmas.empty() || grid.n_qs.empty())
        throw ConfigError("hyperparameter grid is empty");
    const int max_rank = static_cast<int>(targets.ctr_by_rank.size());

    HyperSearchResult out;
    bool first = true;
    for (double sigma : grid.sigmas) {
        for (int n_q : grid.n_qs) {
            RunConfig cell_cfg = cfg;
            cell_cfg.sigma = sigma;
            cell_cfg.n_q.max = n_q;
            if (cell_cfg.n_q.min > n_q) cell_cfg.n_q.min = n_q;
            cell_cfg.validate();
            // Every cell shares the seed, so the loss surface is a
            // deterministic function of (sigma, n_q).
            const auto sim = simulated_moments(cell_cfg, n_sim_impressions, seed, max_rank);
            HyperCell cell{sigma, n_q, moment_loss(targets, sim)};
            out.surface.push_back(cell);
            if (first || cell.loss < out.best.loss) {
                out.best = cell;
                first = false;
            }
        }
    }
    return out;
}

DeltaCalibration calibrate_delta(const RunConfig& cfg, double target_drop, double tol,
                                 double bracket_lo, double bracket_hi) {
    if (!(target_drop > 0.0)) throw ConfigError("delta calibration: target drop must be > 0");
    if (!(tol > 0.0)) throw ConfigError("delta calibration: tolerance must be > 0");
    if (!(bracket_hi > bracket_lo) || bracket_lo < 0.0)
        throw ConfigError("delta calibration: invalid bracket");

    RunConfig c = cfg;
    c.n_queries = cfg.calibration_queries();
    // Same streams as run_ground_truth: the calibration sample shares the
    // ground-truth pool and query draws, so by default (calibration sample =
    // experiment sample) the calibrated drop transfers to the ground-truth
    // TATE within the bisection tolerance.
    const std::uint64_t seed = derive_seed(cfg.master_seed, stream::kGroundTruth);
    Rng pool_rng = make_rng(seed, stream::kPool);
    const auto pool = draw_item_pool(c.n_items, c.utility, pool_rng);

    DeltaCalibration out;
    const auto conversion = [&](const TreatmentPlan& plan) {
        return simulate_unmodified(pool, c, plan, seed, c.n_queries, /*keep_items=*/false)
            .mean_outcome;
    };
    const double base = conversion(TreatmentPlan::none());
    const auto drop_at = [&](double delta) {
        const double d = base - conversion(TreatmentPlan::all(c.treatment_spec(delta)));
        out.evaluations.emplace_back(delta, d);
        return d;
    };

    double lo = bracket_lo, hi = bracket_hi;
    double drop_lo = drop_at(lo);
    if (std::abs(drop_lo - target_drop) <= tol) {
        out.delta = lo;
        out.achieved_drop = drop_lo;
        return out;
    }
    const double drop_hi = drop_at(hi);
    if (std::abs(drop_hi - target_drop) <= tol) {
        out.delta = hi;
        out.achieved_drop = drop_hi;
        return out;
    }
    if ((drop_lo - target_drop) * (drop_hi - target_drop) > 0.0)
        throw EstimationError("delta calibration: target drop not bracketed");

    double mid = lo, drop_mid = drop_lo;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        drop_mid = drop_at(mid);
        if (std::abs(drop_mid - target_drop) <= tol || (hi - lo) < 1e-12) break;
        if ((drop_mid - target_drop) * (drop_lo - target_drop) > 0.0) {
            lo = mid;
            drop_lo = drop_mid;
        } else {
            hi = mid;
        }
    }
    out.delta = mid;
    out.achieved_drop = drop_mid;
    return out;
}

std::vector<ImpressionRow> generate_impression_log(const RunConfig& cfg,
                                                   std::size_t n_impressions, double random_frac,
                                                   std::uint64_t seed) {
    if (random_frac < 0.0 || random_frac > 1.0)
        throw ConfigError("impression log: random fraction must be in [0, 1]");
    Rng pool_rng = make_rng(seed, stream::kPool);
    const auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    const auto plan = TreatmentPlan::none();

    std::vector<ImpressionRow> rows;
    for (std::size_t q = 0; q < n_impressions; ++q) {
        Rng rng = make_rng(seed, stream::kLog, q);
        const int n_q = cfg.n_q.sample(rng);
        const auto ids = draw_candidate_ids(pool.size(), n_q, rng);
        auto candidates = score_candidates(pool, ids, cfg.sigma, rng);
        const bool random_sort = draw_bernoulli(rng, random_frac);

        Listing listing;
        listing.query_id = static_cast<std::int64_t>(q);
        if (random_sort) {
            std::shuffle(candidates.begin(), candidates.end(), rng);
            int pos = 1;
            for (const auto& cand : candidates) {
                ListingEntry e;
                e.item_id = cand.item_id;
                e.position = pos++;
                e.relevance = cand.relevance;
                e.group = cand.group;
                e.v = cand.v;
                listing.entries.push_back(e);
            }
        } else {
            listing = rank_original(candidates, listing.query_id);
        }
        simulate_query_outcomes(listing, cfg.behavior, plan, rng);

        for (const auto& e : listing.entries) {
            ImpressionRow row;
            row.impression_id = static_cast<std::int64_t>(q);
            row.position = e.position;
            row.item_id = e.item_id;
            row.clicked = e.clicked;
            row.booked = e.booked;
            row.random_sort = random_sort;
            row.utility_proxy = e.v;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<double> simulate_ctr_by_rank(const RunConfig& cfg, std::size_t n_impressions,
                                         std::uint64_t seed, int max_rank) {
    return simulated_moments(cfg, n_impressions, seed, max_rank).ctr_by_rank;
}

void write_fitted_params_json(const std::filesystem::path& path, const FittedParams& p) {
    nlohmann::json j;
    j["click"] = {{"b0", p.click.b0},
                  {"b_rank", p.click.b_rank},
                  {"b_rank2", p.click.b_rank2},
                  {"b_v", p.click.b_v},
                  {"b_prior", p.click.b_prior}};
    j["booking"] = {{"g_v", p.booking.g_v}, {"outside_utility", p.booking.outside_utility}};
    j["sigma"] = p.sigma;
    j["n_q"] = p.n_q;
    if (p.delta)
        j["delta"] = *p.delta;
    else
        j["delta"] = nullptr;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
}

FittedParams read_fitted_params_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
        FittedParams p;
        const auto& c = j.at("click");
        p.click.b0 = c.at("b0").get<double>();
        p.click.b_rank = c.at("b_rank").get<double>();
        p.click.b_rank2 = c.at("b_rank2").get<double>();
        p.click.b_v = c.at("b_v").get<double>();
        p.click.b_prior = c.at("b_prior").get<double>();
        const auto& b = j.at("booking");
        p.booking.g_v = b.at("g_v").get<double>();
        p.booking.outside_utility = b.at("outside_utility").get<double>();
        p.sigma = j.at("sigma").get<double>();
        p.n_q = j.at("n_q").get<int>();
        if (j.contains("delta") && !j.at("delta").is_null())
            p.delta = j.at("delta").get<double>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("fitted params parse error in " + path.string() + ": " + e.what());
    }
}

}  // namespace tspr
