#include "tspr/design.hpp"

#include <algorithm>

#include "tspr/errors.hpp"

namespace tspr {

void DesignParams::validate() const {
    if (!(p > 0.0 && p < 0.5))
        throw ConfigError("treatment share p must lie in (0, 0.5)");
    if (!(arm_prob > 0.0 && arm_prob < 1.0))
        throw ConfigError("arm_prob must lie in (0, 1)");
}

void partition_items(std::vector<Item>& items, double p, Rng& rng) {
    if (!(p > 0.0 && p < 0.5))
        throw ConfigError("treatment share p must lie in (0, 0.5)");
    for (auto& item : items) {
        if (item.group != Group::Unassigned)
            throw std::invalid_argument("partition_items requires an unassigned pool");
        const double u = draw_uniform(rng);
        item.group = u < p ? Group::Treated : (u < 2.0 * p ? Group::Untreated : Group::Placebo);
    }
}

void partition_items_binary(std::vector<Item>& items, double p, Rng& rng) {
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("binary treatment share p must lie in (0, 1)");
    for (auto& item : items) {
        if (item.group != Group::Unassigned)
            throw std::invalid_argument("partition_items_binary requires an unassigned pool");
        item.group = draw_bernoulli(rng, p) ? Group::Treated : Group::Untreated;
    }
}

Arm assign_arm(double arm_prob, Rng& rng) {
    return draw_bernoulli(rng, arm_prob) ? Arm::A : Arm::B;
}

std::array<Group, 3> priority_order(Arm arm) {
    if (arm == Arm::A) return {Group::Untreated, Group::Placebo, Group::Treated};
    return {Group::Treated, Group::Placebo, Group::Untreated};
}

int priority_rank(Group g, Arm arm) {
    const auto order = priority_order(arm);
    for (int i = 0; i < 3; ++i)
        if (order[static_cast<std::size_t>(i)] == g) return i;
    throw std::invalid_argument("priority_rank requires a partitioned item");
}

Group prioritized_group(Arm arm) {
    return arm == Arm::A ? Group::Untreated : Group::Treated;
}

std::vector<ScoredCandidate> filter_relevant(const std::vector<ScoredCandidate>& candidates,
                                             double r_min) {
    std::vector<ScoredCandidate> kept;
    kept.reserve(candidates.size());
    for (const auto& c : candidates)
        if (c.relevance > r_min) kept.push_back(c);  // strict inequality
    return kept;
}

Listing rank_tspr(const std::vector<ScoredCandidate>& filtered, Arm arm,
                  std::int64_t query_id) {
    std::vector<ScoredCandidate> sorted = filtered;
    std::sort(sorted.begin(), sorted.end(), [arm](const auto& a, const auto& b) {
        const int pa = priority_rank(a.group, arm);
        const int pb = priority_rank(b.group, arm);
        if (pa != pb) return pa < pb;
        if (a.relevance != b.relevance) return a.relevance > b.relevance;
        return a.item_id < b.item_id;
    });

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

int block_length(const Listing& listing, Arm arm) {
    const Group target = prioritized_group(arm);
    int count = 0;
    for (const auto& e : listing.entries)
        if (e.group == target) ++count;
    return count;
}

}  // namespace tspr
