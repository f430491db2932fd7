#include "tspr/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tspr/errors.hpp"

namespace tspr {

double estimate_ybar0(std::span<const QueryRecord> pre_records) {
    if (pre_records.empty())
        throw EstimationError("pre-experiment record set is empty");
    double total = 0.0;
    for (const auto& r : pre_records) total += r.y_total;
    return total / static_cast<double>(pre_records.size());
}

namespace {

struct StratumAcc {
    std::size_t n_a = 0, n_b = 0;
    double sum_a = 0.0, sum_b = 0.0;
};

// theta_hat from per-stratum accumulators; shared by the point estimate and
// the bootstrap replicates.
double tspr_from_strata(const std::map<int, StratumAcc>& strata, std::size_t n_total_a,
                        std::size_t n_total_b, double ybar0, std::size_t min_stratum,
                        std::vector<StratumStats>* out_strata, std::size_t* out_dropped,
                        double* out_dropped_weight) {
    const double denom = static_cast<double>(n_total_a + n_total_b);
    double weight_sum = 0.0;
    double weighted_terms = 0.0;
    double dropped_weight = 0.0;
    std::size_t n_dropped = 0;
    std::vector<StratumStats> included;

    for (const auto& [l, acc] : strata) {
        if (l < 1) continue;  // l = 0 queries count only in the weight denominator
        const double raw_w = static_cast<double>(acc.n_a + acc.n_b) / denom;
        const bool usable = acc.n_a >= std::max<std::size_t>(min_stratum, 1) &&
                            acc.n_b >= std::max<std::size_t>(min_stratum, 1) &&
                            acc.sum_a > 0.0;
        if (!usable) {
            ++n_dropped;
            dropped_weight += raw_w;
            continue;
        }
        const double mean_a = acc.sum_a / static_cast<double>(acc.n_a);
        const double mean_b = acc.sum_b / static_cast<double>(acc.n_b);
        weight_sum += raw_w;
        weighted_terms += raw_w * ybar0 * (mean_b - mean_a) / mean_a;
        included.push_back(StratumStats{l, acc.n_a, acc.n_b, mean_a, mean_b, raw_w});
    }

    if (included.empty())
        throw EstimationError("no stratum is represented in both arms with positive arm-A mean");

    for (auto& s : included) s.weight /= weight_sum;  // renormalize to sum 1
    if (out_strata) *out_strata = std::move(included);
    if (out_dropped) *out_dropped = n_dropped;
    if (out_dropped_weight) *out_dropped_weight = dropped_weight;
    return weighted_terms / weight_sum;
}

std::map<int, StratumAcc> accumulate_strata(std::span<const QueryRecord> records_a,
                                            std::span<const QueryRecord> records_b) {
    std::map<int, StratumAcc> strata;
    for (const auto& r : records_a) {
        auto& acc = strata[r.block_length];
        ++acc.n_a;
        acc.sum_a += r.y_partial;
    }
    for (const auto& r : records_b) {
        auto& acc = strata[r.block_length];
        ++acc.n_b;
        acc.sum_b += r.y_partial;
    }
    return strata;
}

}  // namespace

EstimateReport estimate_tspr(std::span<const QueryRecord> records_a,
                             std::span<const QueryRecord> records_b, double ybar0,
                             std::size_t min_stratum) {
    if (ybar0 < 0.0) throw EstimationError("ybar0 must be >= 0");
    EstimateReport report;
    report.method = "tspr";
    report.ybar0 = ybar0;

    if (ybar0 == 0.0) {
        report.theta_hat = 0.0;
        report.warnings.push_back("degenerate market: ybar0 = 0, estimate forced to 0");
        return report;
    }

    const auto strata = accumulate_strata(records_a, records_b);
    report.theta_hat =
        tspr_from_strata(strata, records_a.size(), records_b.size(), ybar0, min_stratum,
                         &report.strata, &report.n_dropped_strata, &report.dropped_weight);
    return report;
}

EstimateReport estimate_naive_is(std::span<const QueryRecord> records, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("naive estimator requires p in (0, 1)");
    if (records.empty()) throw EstimationError("naive estimator requires at least one query");

    double treated_total = 0.0;
    double control_total = 0.0;
    for (const auto& r : records) {
        for (const auto& item : r.per_item) {
            if (item.group == Group::Treated)
                treated_total += item.y;
            else
                control_total += item.y;
        }
    }
    const double n_q = static_cast<double>(records.size());

    EstimateReport report;
    report.method = "naive_is";
    report.theta_hat = treated_total / (p * n_q) - control_total / ((1.0 - p) * n_q);
    return report;
}

double bootstrap_se(
    std::span<const std::size_t> group_sizes,
    const std::function<double(const std::vector<std::vector<std::size_t>>&)>& estimator,
    int n_replicates, Rng& rng) {
    if (n_replicates < 2) throw ConfigError("bootstrap needs at least 2 replicates");

    // One base seed from the caller's stream, then per-replicate child streams:
    // replicate results are independent of evaluation order.
    const std::uint64_t base = rng();

    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(n_replicates));
    std::size_t failures = 0;
    std::vector<std::vector<std::size_t>> resample(group_sizes.size());

    for (int b = 0; b < n_replicates; ++b) {
        Rng rep_rng = make_rng(base, static_cast<std::uint64_t>(b));
        for (std::size_t g = 0; g < group_sizes.size(); ++g) {
            auto& idx = resample[g];
            idx.resize(group_sizes[g]);
            if (group_sizes[g] == 0) continue;
            std::uniform_int_distribution<std::size_t> pick(0, group_sizes[g] - 1);
            for (auto& i : idx) i = pick(rep_rng);
        }
        try {
            estimates.push_back(estimator(resample));
        } catch (const EstimationError&) {
            ++failures;
        }
    }

    if (failures * 2 > static_cast<std::size_t>(n_replicates))
        throw EstimationError("bootstrap failed in more than half of the replicates");
    if (estimates.size() < 2)
        throw EstimationError("too few successful bootstrap replicates");

    double mean = 0.0;
    for (const double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    double ss = 0.0;
    for (const double e : estimates) ss += (e - mean) * (e - mean);
    return std::sqrt(ss / static_cast<double>(estimates.size() - 1));
}

double bootstrap_se_tspr(std::span<const QueryRecord> records_a,
                         std::span<const QueryRecord> records_b,
                         std::span<const QueryRecord> pre_records, double ybar0,
                         const BootstrapOptions& opts, Rng& rng) {
    const bool resample_pre = opts.resample_pre && !pre_records.empty();
    std::vector<std::size_t> sizes{records_a.size(), records_b.size()};
    if (resample_pre) sizes.push_back(pre_records.size());

    auto replicate = [&](const std::vector<std::vector<std::size_t>>& idx) {
        std::map<int, StratumAcc> strata;
        for (const auto i : idx[0]) {
            const auto& r = records_a[i];
            auto& acc = strata[r.block_length];
            ++acc.n_a;
            acc.sum_a += r.y_partial;
        }
        for (const auto i : idx[1]) {
            const auto& r = records_b[i];
            auto& acc = strata[r.block_length];
            ++acc.n_b;
            acc.sum_b += r.y_partial;
        }
        double rep_ybar0 = ybar0;
        if (resample_pre) {
            double total = 0.0;
            for (const auto i : idx[2]) total += pre_records[i].y_total;
            rep_ybar0 = total / static_cast<double>(idx[2].size());
        }
        if (rep_ybar0 == 0.0) return 0.0;
        return tspr_from_strata(strata, idx[0].size(), idx[1].size(), rep_ybar0,
                                opts.min_stratum, nullptr, nullptr, nullptr);
    };

    return bootstrap_se(sizes, replicate, opts.replicates, rng);
}

double bootstrap_se_naive(std::span<const QueryRecord> records, double p,
                          int n_replicates, Rng& rng) {
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("naive estimator requires p in (0, 1)");

    // Per-query treated/control sums suffice for the replicates.
    std::vector<double> treated(records.size(), 0.0);
    std::vector<double> control(records.size(), 0.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& item : records[i].per_item) {
            if (item.group == Group::Treated)
                treated[i] += item.y;
            else
                control[i] += item.y;
        }
    }

    const std::size_t sizes[1] = {records.size()};
    auto replicate = [&](const std::vector<std::vector<std::size_t>>& idx) {
        double t = 0.0, c = 0.0;
        for (const auto i : idx[0]) {
            t += treated[i];
            c += control[i];
        }
        const double n = static_cast<double>(idx[0].size());
        return t / (p * n) - c / ((1.0 - p) * n);
    };

    return bootstrap_se(sizes, replicate, n_replicates, rng);
}

}  // namespace tspr
