#pragma once

#include <cstddef>
#include <vector>

#include "tspr/rng.hpp"
#include "tspr/types.hpp"

namespace tspr {

// Distribution of the hidden utility v.
struct UtilityDist {
    enum class Kind { Normal, Uniform };
    Kind kind = Kind::Normal;
    double mean = 0.0;
    double stddev = 1.0;  // Normal; 0 gives a degenerate point mass at mean
    double lo = -1.0;
    double hi = 1.0;  // Uniform
    double sample(Rng& rng) const;
    void validate() const;
};

// Number of candidates per query: fixed when min == max, otherwise uniform
// on {min..max}. Always clamped to the pool size at draw time.
struct CandidateCountSpec {
    int min = 1;
    int max = 1;
    void validate() const;
    int sample(Rng& rng) const;
};

// N items with ids 0..N-1, all Unassigned, v drawn i.i.d. from dist.
std::vector<Item> draw_item_pool(std::size_t n, const UtilityDist& dist, Rng& rng);

// r = v + eps, eps ~ N(0, sigma^2), redrawn per (query, item) pair.
double score_relevance(const Item& item, double sigma, Rng& rng);

// Uniform random subset of {0..pool_size-1} of size n_q, returned ascending.
std::vector<std::int64_t> draw_candidate_ids(std::size_t pool_size, int n_q, Rng& rng);

std::vector<ScoredCandidate> score_candidates(const std::vector<Item>& pool,
                                              const std::vector<std::int64_t>& ids,
                                              double sigma, Rng& rng);

// Unmodified recommender: relevance descending, ties by ascending item id.
Listing rank_original(const std::vector<ScoredCandidate>& candidates,
                      std::int64_t query_id = 0);

}  // namespace tspr
