#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "tspr/errors.hpp"
#include "tspr/marketplace.hpp"

using namespace tspr;

TEST_CASE("item pool ids and degenerate utility") {
    Rng rng(1);
    UtilityDist point{UtilityDist::Kind::Normal, 0.4, 0.0};
    const auto pool = draw_item_pool(3, point, rng);
    REQUIRE(pool.size() == 3);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        CHECK(pool[i].id == static_cast<std::int64_t>(i));
        CHECK(pool[i].v == 0.4);
        CHECK(pool[i].group == Group::Unassigned);
    }

    const auto one = draw_item_pool(1, point, rng);
    REQUIRE(one.size() == 1);
    CHECK(one[0].id == 0);
}

TEST_CASE("item pool sample moments") {
    Rng rng(7);
    UtilityDist std_normal{};
    const auto pool = draw_item_pool(10000, std_normal, rng);
    double mean = 0.0;
    for (const auto& it : pool) mean += it.v;
    mean /= 10000.0;
    double var = 0.0;
    for (const auto& it : pool) var += (it.v - mean) * (it.v - mean);
    var /= 9999.0;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("uniform utility stays in range") {
    Rng rng(3);
    UtilityDist u{UtilityDist::Kind::Uniform, 0.0, 1.0, -2.0, 3.0};
    const auto pool = draw_item_pool(5000, u, rng);
    for (const auto& it : pool) {
        CHECK(it.v >= -2.0);
        CHECK(it.v <= 3.0);
    }
}

TEST_CASE("relevance with zero noise is the utility") {
    Rng rng(5);
    CHECK(score_relevance(Item{0, 1.7}, 0.0, rng) == 1.7);
    CHECK(score_relevance(Item{0, -2.0}, 0.0, rng) == -2.0);
}

TEST_CASE("relevance noise has the configured scale") {
    Rng rng(11);
    const Item item{0, 0.0};
    double mean = 0.0, ss = 0.0;
    const int n = 10000;
    std::vector<double> draws(n);
    for (auto& d : draws) d = score_relevance(item, 1.0, rng);
    for (double d : draws) mean += d;
    mean /= n;
    for (double d : draws) ss += (d - mean) * (d - mean);
    const double sd = std::sqrt(ss / (n - 1));
    CHECK(sd > 0.97);
    CHECK(sd < 1.03);
}

TEST_CASE("rank_original sorts by relevance, ties by id") {
    std::vector<ScoredCandidate> cands{
        {1, 0.1, Group::Unassigned, 0.0},
        {2, 0.9, Group::Unassigned, 0.0},
        {3, 0.5, Group::Unassigned, 0.0},
    };
    const auto listing = rank_original(cands, 42);
    REQUIRE(listing.entries.size() == 3);
    CHECK(listing.query_id == 42);
    CHECK(listing.entries[0].item_id == 2);
    CHECK(listing.entries[1].item_id == 3);
    CHECK(listing.entries[2].item_id == 1);
    for (int i = 0; i < 3; ++i) CHECK(listing.entries[static_cast<std::size_t>(i)].position == i + 1);

    std::vector<ScoredCandidate> tied{
        {9, 0.5, Group::Unassigned, 0.0},
        {2, 0.5, Group::Unassigned, 0.0},
        {5, 0.5, Group::Unassigned, 0.0},
    };
    const auto tl = rank_original(tied);
    CHECK(tl.entries[0].item_id == 2);
    CHECK(tl.entries[1].item_id == 5);
    CHECK(tl.entries[2].item_id == 9);
}

TEST_CASE("rank_original is a permutation and input-order invariant") {
    Rng rng(17);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<ScoredCandidate> cands;
        for (int i = 0; i < n; ++i)
            cands.push_back({static_cast<std::int64_t>(i), draw_normal(rng), Group::Unassigned, 0.0});
        const auto base = rank_original(cands);

        std::multiset<std::int64_t> in, out;
        for (const auto& c : cands) in.insert(c.item_id);
        for (const auto& e : base.entries) out.insert(e.item_id);
        CHECK(in == out);
        for (std::size_t i = 1; i < base.entries.size(); ++i)
            CHECK(base.entries[i - 1].relevance >= base.entries[i].relevance);

        std::shuffle(cands.begin(), cands.end(), rng);
        const auto again = rank_original(cands);
        REQUIRE(again.entries.size() == base.entries.size());
        for (std::size_t i = 0; i < base.entries.size(); ++i)
            CHECK(again.entries[i].item_id == base.entries[i].item_id);
    }
}

TEST_CASE("rank_original rejects an empty candidate list") {
    CHECK_THROWS_AS(rank_original({}), DataError);
}

TEST_CASE("candidate draws are sorted unique subsets of the pool") {
    Rng rng(23);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t pool_size = 5 + rng() % 60;
        const int n_q = 1 + static_cast<int>(rng() % 40);
        const auto ids = draw_candidate_ids(pool_size, n_q, rng);
        CHECK(ids.size() == std::min<std::size_t>(static_cast<std::size_t>(n_q), pool_size));
        CHECK(std::is_sorted(ids.begin(), ids.end()));
        CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
        for (const auto id : ids) {
            CHECK(id >= 0);
            CHECK(id < static_cast<std::int64_t>(pool_size));
        }
    }
}

TEST_CASE("candidate count spec samples inside its range") {
    Rng rng(31);
    CandidateCountSpec fixed{7, 7};
    for (int i = 0; i < 20; ++i) CHECK(fixed.sample(rng) == 7);
    CandidateCountSpec spread{4, 33};
    bool saw_min = false, saw_max = false;
    for (int i = 0; i < 5000; ++i) {
        const int n = spread.sample(rng);
        CHECK(n >= 4);
        CHECK(n <= 33);
        saw_min = saw_min || n == 4;
        saw_max = saw_max || n == 33;
    }
    CHECK(saw_min);
    CHECK(saw_max);
}

TEST_CASE("pool and scores are reproducible under a fixed seed") {
    UtilityDist dist{};
    Rng a = make_rng(99, 1), b = make_rng(99, 1);
    const auto pa = draw_item_pool(500, dist, a);
    const auto pb = draw_item_pool(500, dist, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].v == pb[i].v);
    CHECK(score_relevance(pa[0], 0.7, a) == score_relevance(pb[0], 0.7, b));
}

TEST_CASE("config validation rejects bad marketplace parameters") {
    UtilityDist bad{UtilityDist::Kind::Normal, 0.0, -1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    UtilityDist bad_u{UtilityDist::Kind::Uniform, 0.0, 1.0, 2.0, 1.0};
    CHECK_THROWS_AS(bad_u.validate(), ConfigError);
    CandidateCountSpec bad_n{5, 4};
    CHECK_THROWS_AS(bad_n.validate(), ConfigError);
    CandidateCountSpec zero{0, 4};
    CHECK_THROWS_AS(zero.validate(), ConfigError);
}
