#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "tspr/behavior.hpp"
#include "tspr/errors.hpp"
#include "tspr/records.hpp"
#include "tspr/rng.hpp"

using namespace tspr;
namespace fs = std::filesystem;

namespace {

Listing listing_with_y(const std::vector<double>& ys) {
    Listing listing;
    int pos = 1;
    for (const double y : ys) {
        ListingEntry e;
        e.item_id = pos;
        e.position = pos++;
        e.group = Group::Placebo;
        e.y = y;
        listing.entries.push_back(e);
    }
    return listing;
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("tspr-records-" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("partial outcome prefix sums") {
    const auto listing = listing_with_y({0.0, 1.0, 0.0});
    CHECK(partial_outcome(listing, 2) == 1.0);
    CHECK(partial_outcome(listing, 0) == 0.0);
    CHECK(partial_outcome(listing, 3) == 1.0);
    CHECK_THROWS(partial_outcome(listing, 4));
    CHECK_THROWS(partial_outcome(listing, -1));
}

TEST_CASE("partial outcome is non-decreasing in l") {
    Rng rng(1);
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 10);
        std::vector<double> ys;
        for (int i = 0; i < n; ++i) ys.push_back(draw_uniform(rng));
        const auto listing = listing_with_y(ys);
        double prev = 0.0;
        for (int l = 0; l <= n; ++l) {
            const double cur = partial_outcome(listing, l);
            CHECK(cur >= prev);
            prev = cur;
        }
        CHECK(prev == doctest::Approx(listing_outcome_total(listing)).epsilon(1e-12));
    }
}

TEST_CASE("query records capture totals, partials, and items") {
    auto listing = listing_with_y({0.0, 1.0, 0.0, 1.0});
    listing.query_id = 17;
    const auto r = make_query_record(listing, Arm::B, 2, /*keep_items=*/true);
    CHECK(r.query_id == 17);
    CHECK(r.arm == Arm::B);
    CHECK(r.block_length == 2);
    CHECK(r.y_total == 2.0);
    CHECK(r.y_partial == 1.0);
    REQUIRE(r.per_item.size() == 4);
    CHECK(r.per_item[1].y == 1.0);
    CHECK(r.per_item[0].group == Group::Placebo);

    const auto slim = make_query_record(listing, Arm::A, 0, /*keep_items=*/false);
    CHECK(slim.per_item.empty());
    CHECK(slim.y_partial == 0.0);
}

TEST_CASE("query record CSV round trip") {
    TempDir tmp;
    std::vector<QueryRecord> records;
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        QueryRecord r;
        r.query_id = i;
        r.arm = i % 3 == 0 ? Arm::PreExperiment : (i % 2 == 0 ? Arm::A : Arm::B);
        r.block_length = static_cast<int>(rng() % 5);
        r.y_total = draw_uniform(rng);
        r.y_partial = r.y_total * 0.5;
        records.push_back(r);
    }
    const auto path = tmp.path / "records.csv";
    write_query_records_csv(path, records);
    const auto back = read_query_records_csv(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].query_id == records[i].query_id);
        CHECK(back[i].arm == records[i].arm);
        CHECK(back[i].block_length == records[i].block_length);
        CHECK(back[i].y_total == records[i].y_total);  // %.17g survives the trip
        CHECK(back[i].y_partial == records[i].y_partial);
    }
}

TEST_CASE("item outcomes CSV attaches back onto records") {
    TempDir tmp;
    std::vector<QueryRecord> records(3);
    for (int i = 0; i < 3; ++i) records[static_cast<std::size_t>(i)].query_id = i;
    records[0].per_item = {{5, Group::Treated, 1.0}, {9, Group::Placebo, 0.0}};
    records[2].per_item = {{7, Group::Untreated, 0.25}};

    const auto path = tmp.path / "items.csv";
    write_item_outcomes_csv(path, records);

    auto stripped = records;
    for (auto& r : stripped) r.per_item.clear();
    attach_item_outcomes_csv(path, stripped);
    REQUIRE(stripped[0].per_item.size() == 2);
    CHECK(stripped[0].per_item[0].item_id == 5);
    CHECK(stripped[0].per_item[0].group == Group::Treated);
    CHECK(stripped[0].per_item[1].y == 0.0);
    CHECK(stripped[1].per_item.empty());
    REQUIRE(stripped[2].per_item.size() == 1);
    CHECK(stripped[2].per_item[0].y == 0.25);
}

TEST_CASE("malformed record files are data errors") {
    TempDir tmp;
    const auto path = tmp.path / "bad.csv";
    {
        auto out = std::ofstream(path);
        out << "nope,header\n";
    }
    CHECK_THROWS_AS(read_query_records_csv(path), DataError);
    CHECK_THROWS_AS(read_query_records_csv(tmp.path / "missing.csv"), DataError);
}
