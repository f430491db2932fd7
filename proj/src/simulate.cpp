#include "tspr/simulate.hpp"

#include "tspr/design.hpp"

namespace tspr {

namespace {

// Market randomness for one query: candidate count, candidate set, relevance
// draws. All scenarios sharing (seed, stream, index) see the same draws.
std::vector<ScoredCandidate> draw_scored_candidates(const std::vector<Item>& pool,
                                                    const RunConfig& cfg, Rng& rng) {
    const int n_q = cfg.n_q.sample(rng);
    const auto ids = draw_candidate_ids(pool.size(), n_q, rng);
    return score_candidates(pool, ids, cfg.sigma, rng);
}

}  // namespace

std::vector<Item> make_partitioned_pool(const RunConfig& cfg, std::uint64_t seed) {
    Rng pool_rng = make_rng(seed, stream::kPool);
    auto pool = draw_item_pool(cfg.n_items, cfg.utility, pool_rng);
    Rng part_rng = make_rng(seed, stream::kPartition);
    partition_items(pool, cfg.design.p, part_rng);
    return pool;
}

Listing simulate_unmodified_query(const std::vector<Item>& pool, const RunConfig& cfg,
                                  const TreatmentPlan& plan, std::uint64_t seed,
                                  std::uint64_t query_index) {
    Rng rng = make_rng(seed, stream::kQuery, query_index);
    auto candidates = draw_scored_candidates(pool, cfg, rng);
    Listing listing = rank_original(candidates, static_cast<std::int64_t>(query_index));
    simulate_query_outcomes(listing, cfg.behavior, plan, rng);
    return listing;
}

UnmodifiedRun simulate_unmodified(const std::vector<Item>& pool, const RunConfig& cfg,
                                  const TreatmentPlan& plan, std::uint64_t seed,
                                  std::size_t n_queries, bool keep_items) {
    UnmodifiedRun run;
    run.records.reserve(n_queries);
    double total = 0.0;
    for (std::size_t q = 0; q < n_queries; ++q) {
        Listing listing = simulate_unmodified_query(pool, cfg, plan, seed, q);
        auto rec = make_query_record(listing, Arm::A, 0, keep_items);
        total += rec.y_total;
        run.records.push_back(std::move(rec));
    }
    run.diag.n_queries = n_queries;
    run.mean_outcome = n_queries == 0 ? 0.0 : total / static_cast<double>(n_queries);
    return run;
}

TsprQueryResult simulate_tspr_query(const std::vector<Item>& pool, const RunConfig& cfg,
                                    const TreatmentPlan& plan, std::uint64_t seed,
                                    std::uint64_t query_stream, std::uint64_t query_index) {
    TsprQueryResult out;
    Rng rng = make_rng(seed, query_stream, query_index);
    auto candidates = draw_scored_candidates(pool, cfg, rng);
    out.arm = assign_arm(cfg.design.arm_prob, rng);
    auto kept = filter_relevant(candidates, cfg.design.r_min);
    if (static_cast<int>(kept.size()) < cfg.min_listing_len) return out;
    out.listing = rank_tspr(kept, out.arm, static_cast<std::int64_t>(query_index));
    simulate_query_outcomes(out.listing, cfg.behavior, plan, rng);
    out.kept = true;
    return out;
}

TsprRun simulate_tspr(const std::vector<Item>& pool, const RunConfig& cfg,
                      const TreatmentPlan& plan, std::uint64_t seed,
                      std::size_t n_queries, std::uint64_t query_stream,
                      bool tag_pre_experiment) {
    TsprRun run;
    run.diag.n_queries = n_queries;
    for (std::size_t q = 0; q < n_queries; ++q) {
        auto res = simulate_tspr_query(pool, cfg, plan, seed, query_stream, q);
        if (!res.kept) {
            ++run.diag.n_dropped_queries;
            continue;
        }
        const int l = block_length(res.listing, res.arm);
        const Arm tag = tag_pre_experiment ? Arm::PreExperiment : res.arm;
        auto rec = make_query_record(res.listing, tag, l, /*keep_items=*/!tag_pre_experiment);
        if (res.arm == Arm::A)
            run.records_a.push_back(std::move(rec));
        else
            run.records_b.push_back(std::move(rec));
    }
    return run;
}

}  // namespace tspr
