#include "tspr/records.hpp"

#include <cstdio>
#include <unordered_map>

#include "tspr/behavior.hpp"
#include "tspr/csv.hpp"
#include "tspr/errors.hpp"

namespace tspr {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double partial_outcome(std::span<const ListingEntry> entries, int l) {
    if (l < 0 || static_cast<std::size_t>(l) > entries.size())
        throw std::out_of_range("partial outcome prefix exceeds listing length");
    double total = 0.0;
    for (int i = 0; i < l; ++i) total += entries[static_cast<std::size_t>(i)].y;
    return total;
}

double partial_outcome(const Listing& listing, int l) {
    return partial_outcome(std::span<const ListingEntry>(listing.entries), l);
}

QueryRecord make_query_record(const Listing& listing, Arm record_arm, int block_len,
                              bool keep_items) {
    QueryRecord rec;
    rec.query_id = listing.query_id;
    rec.arm = record_arm;
    rec.block_length = block_len;
    rec.y_total = listing_outcome_total(listing);
    rec.y_partial = partial_outcome(listing, block_len);
    if (keep_items) {
        rec.per_item.reserve(listing.entries.size());
        for (const auto& e : listing.entries)
            rec.per_item.push_back(ItemOutcome{e.item_id, e.group, e.y});
    }
    return rec;
}

void write_query_records_csv(const std::filesystem::path& path,
                             std::span<const QueryRecord> records) {
    auto out = csv::open_output(path);
    out << "query_id,arm,l,y_total,y_partial\n";
    for (const auto& r : records) {
        out << r.query_id << ',' << to_string(r.arm) << ',' << r.block_length << ','
            << fmt_double(r.y_total) << ',' << fmt_double(r.y_partial) << '\n';
    }
}

std::vector<QueryRecord> read_query_records_csv(const std::filesystem::path& path) {
    auto in = csv::open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty records file: " + path.string());
    if (csv::split_line(line) != std::vector<std::string>{"query_id", "arm", "l", "y_total", "y_partial"})
        throw DataError("unexpected records header in " + path.string());

    std::vector<QueryRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = csv::split_line(line);
        if (f.size() != 5) throw DataError("malformed records row in " + path.string());
        QueryRecord r;
        r.query_id = std::stoll(f[0]);
        r.arm = arm_from_string(f[1]);
        r.block_length = std::stoi(f[2]);
        r.y_total = std::stod(f[3]);
        r.y_partial = std::stod(f[4]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_item_outcomes_csv(const std::filesystem::path& path,
                             std::span<const QueryRecord> records) {
    auto out = csv::open_output(path);
    out << "query_id,item_id,group,y\n";
    for (const auto& r : records)
        for (const auto& item : r.per_item)
            out << r.query_id << ',' << item.item_id << ',' << to_string(item.group) << ','
                << fmt_double(item.y) << '\n';
}

void attach_item_outcomes_csv(const std::filesystem::path& path,
                              std::vector<QueryRecord>& records) {
    auto in = csv::open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty item-outcomes file: " + path.string());
    if (csv::split_line(line) != std::vector<std::string>{"query_id", "item_id", "group", "y"})
        throw DataError("unexpected item-outcomes header in " + path.string());

    std::unordered_map<std::int64_t, QueryRecord*> by_id;
    by_id.reserve(records.size());
    for (auto& r : records) {
        r.per_item.clear();
        by_id[r.query_id] = &r;
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = csv::split_line(line);
        if (f.size() != 4) throw DataError("malformed item-outcomes row in " + path.string());
        const auto it = by_id.find(std::stoll(f[0]));
        if (it == by_id.end())
            throw DataError("item outcome references unknown query_id " + f[0]);
        it->second->per_item.push_back(
            ItemOutcome{std::stoll(f[1]), group_from_string(f[2]), std::stod(f[3])});
    }
}

}  // namespace tspr
