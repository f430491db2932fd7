#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "tspr/types.hpp"

namespace tspr {

struct ItemOutcome {
    std::int64_t item_id = 0;
    Group group = Group::Unassigned;
    double y = 0.0;
};

// Per-query estimation input: block length l, total outcome, and the partial
// outcome at this record's own l.
struct QueryRecord {
    std::int64_t query_id = 0;
    Arm arm = Arm::A;
    int block_length = 0;
    double y_total = 0.0;
    double y_partial = 0.0;
    std::vector<ItemOutcome> per_item;
};

// Sum of y over positions 1..l; l = 0 gives 0.
double partial_outcome(const Listing& listing, int l);
double partial_outcome(std::span<const ListingEntry> entries, int l);

QueryRecord make_query_record(const Listing& listing, Arm record_arm,
                              int block_len, bool keep_items);

// records CSV: query_id, arm, l, y_total, y_partial
void write_query_records_csv(const std::filesystem::path& path,
                             std::span<const QueryRecord> records);
std::vector<QueryRecord> read_query_records_csv(const std::filesystem::path& path);

// long-format per-item CSV: query_id, item_id, group, y
void write_item_outcomes_csv(const std::filesystem::path& path,
                             std::span<const QueryRecord> records);
// Joins item rows back onto records by query_id.
void attach_item_outcomes_csv(const std::filesystem::path& path,
                              std::vector<QueryRecord>& records);

}  // namespace tspr
