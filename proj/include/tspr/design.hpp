#pragma once

#include <array>
#include <vector>

#include "tspr/rng.hpp"
#include "tspr/types.hpp"

namespace tspr {

struct DesignParams {
    double p = 0.25;      // treatment share, 0 < p < 0.5
    double r_min = 1.7;   // relevance threshold, strict (r > r_min)
    double arm_prob = 0.5;
    void validate() const;
};

// Three-way split: Treated w.p. p, Untreated w.p. p, Placebo w.p. 1-2p.
void partition_items(std::vector<Item>& items, double p, Rng& rng);

// Binary split used by the item-side baseline: Treated w.p. p, else Untreated.
void partition_items_binary(std::vector<Item>& items, double p, Rng& rng);

Arm assign_arm(double arm_prob, Rng& rng);

// A: Untreated first, then Placebo, then Treated. B: the mirror image.
std::array<Group, 3> priority_order(Arm arm);
int priority_rank(Group g, Arm arm);  // 0 = highest priority
Group prioritized_group(Arm arm);     // Untreated for A, Treated for B

// Keeps candidates with relevance strictly above r_min, order preserved.
std::vector<ScoredCandidate> filter_relevant(const std::vector<ScoredCandidate>& candidates,
                                             double r_min);

// Priority ascending, then relevance descending, ties by ascending item id.
Listing rank_tspr(const std::vector<ScoredCandidate>& filtered, Arm arm,
                  std::int64_t query_id = 0);

// Count of the arm's prioritized-group entries; equals the leading-block
// length because rank_tspr keeps priority classes contiguous.
int block_length(const Listing& listing, Arm arm);

}  // namespace tspr
