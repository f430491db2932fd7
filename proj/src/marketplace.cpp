#include "tspr/marketplace.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tspr/errors.hpp"

namespace tspr {

const char* to_string(Group g) {
    switch (g) {
        case Group::Unassigned: return "Unassigned";
        case Group::Treated: return "Treated";
        case Group::Untreated: return "Untreated";
        case Group::Placebo: return "Placebo";
    }
    return "?";
}

const char* to_string(Arm a) {
    switch (a) {
        case Arm::A: return "A";
        case Arm::B: return "B";
        case Arm::PreExperiment: return "pre";
    }
    return "?";
}

Group group_from_string(const std::string& s) {
    if (s == "Unassigned") return Group::Unassigned;
    if (s == "Treated") return Group::Treated;
    if (s == "Untreated") return Group::Untreated;
    if (s == "Placebo") return Group::Placebo;
    throw DataError("unknown group: " + s);
}

Arm arm_from_string(const std::string& s) {
    if (s == "A") return Arm::A;
    if (s == "B") return Arm::B;
    if (s == "pre") return Arm::PreExperiment;
    throw DataError("unknown arm: " + s);
}

double UtilityDist::sample(Rng& rng) const {
    switch (kind) {
        case Kind::Normal:
            return stddev == 0.0 ? mean : draw_normal(rng, mean, stddev);
        case Kind::Uniform:
            return lo + (hi - lo) * draw_uniform(rng);
    }
    return 0.0;
}

void UtilityDist::validate() const {
    if (kind == Kind::Normal && stddev < 0.0)
        throw ConfigError("utility stddev must be >= 0");
    if (kind == Kind::Uniform && hi < lo)
        throw ConfigError("utility uniform bounds out of order");
}

void CandidateCountSpec::validate() const {
    if (min < 1 || max < min) throw ConfigError("n_q spec requires 1 <= min <= max");
}

int CandidateCountSpec::sample(Rng& rng) const {
    if (min == max) return min;
    return std::uniform_int_distribution<int>(min, max)(rng);
}

std::vector<Item> draw_item_pool(std::size_t n, const UtilityDist& dist, Rng& rng) {
    if (n == 0) throw ConfigError("item pool size must be >= 1");
    dist.validate();
    std::vector<Item> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pool.push_back(Item{static_cast<std::int64_t>(i), dist.sample(rng), Group::Unassigned});
    return pool;
}

double score_relevance(const Item& item, double sigma, Rng& rng) {
    if (sigma < 0.0) throw ConfigError("relevance noise sigma must be >= 0");
    if (sigma == 0.0) return item.v;
    return item.v + draw_normal(rng, 0.0, sigma);
}

std::vector<std::int64_t> draw_candidate_ids(std::size_t pool_size, int n_q, Rng& rng) {
    if (pool_size == 0) throw ConfigError("cannot draw candidates from an empty pool");
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(n_q, 0)), pool_size);
    // Floyd's sampling: uniform subset in O(n) draws.
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(n * 2);
    for (std::size_t j = pool_size - n; j < pool_size; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::int64_t> ids(chosen.begin(), chosen.end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<ScoredCandidate> score_candidates(const std::vector<Item>& pool,
                                              const std::vector<std::int64_t>& ids,
                                              double sigma, Rng& rng) {
    std::vector<ScoredCandidate> out;
    out.reserve(ids.size());
    for (const auto id : ids) {
        const Item& item = pool.at(static_cast<std::size_t>(id));
        out.push_back(ScoredCandidate{item.id, score_relevance(item, sigma, rng),
                                      item.group, item.v});
    }
    return out;
}

namespace {

Listing listing_from_sorted(std::vector<ScoredCandidate> sorted, std::int64_t query_id) {
    Listing listing;
    listing.query_id = query_id;
    listing.entries.reserve(sorted.size());
    int pos = 1;
    for (const auto& c : sorted) {
        ListingEntry e;
        e.item_id = c.item_id;
        e.position = pos++;
        e.relevance = c.relevance;
        e.group = c.group;
        e.v = c.v;
        listing.entries.push_back(e);
    }
    return listing;
}

}  // namespace

Listing rank_original(const std::vector<ScoredCandidate>& candidates, std::int64_t query_id) {
    if (candidates.empty()) throw DataError("cannot rank an empty candidate list");
    std::vector<ScoredCandidate> sorted = candidates;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.relevance != b.relevance) return a.relevance > b.relevance;
        return a.item_id < b.item_id;
    });
    return listing_from_sorted(std::move(sorted), query_id);
}

}  // namespace tspr
