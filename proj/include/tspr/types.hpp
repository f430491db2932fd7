#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tspr {

enum class Group : std::uint8_t { Unassigned, Treated, Untreated, Placebo };

enum class Arm : std::uint8_t { A, B, PreExperiment };

const char* to_string(Group g);
const char* to_string(Arm a);
Group group_from_string(const std::string& s);
Arm arm_from_string(const std::string& s);

// Marketplace unit with a hidden net utility v and an experiment group.
struct Item {
    std::int64_t id = 0;
    double v = 0.0;
    Group group = Group::Unassigned;
};

struct Query {
    std::int64_t id = 0;
    Arm arm = Arm::PreExperiment;
    std::vector<std::int64_t> candidate_ids;
};

// Candidate after relevance scoring; carries the utility snapshot so the
// behavior stage does not need to look back into the item pool.
struct ScoredCandidate {
    std::int64_t item_id = 0;
    double relevance = 0.0;
    Group group = Group::Unassigned;
    double v = 0.0;
};

struct ListingEntry {
    std::int64_t item_id = 0;
    int position = 0;  // 1-based, contiguous
    double relevance = 0.0;
    Group group = Group::Unassigned;
    double v = 0.0;
    bool clicked = false;
    bool booked = false;
    double y = 0.0;  // non-negative per-entry outcome
};

struct Listing {
    std::int64_t query_id = 0;
    std::vector<ListingEntry> entries;
};

}  // namespace tspr
