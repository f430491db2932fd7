#pragma once

#include <cstdint>
#include <vector>

#include "tspr/config.hpp"
#include "tspr/records.hpp"

namespace tspr {

// Named sub-stream tags under a run seed. Per-query streams hang off these,
// so two scenarios sharing a seed see identical market randomness (common
// random numbers) and scenario effects are isolated to behavior responses.
namespace stream {
inline constexpr std::uint64_t kPool = 1;
inline constexpr std::uint64_t kPartition = 2;
inline constexpr std::uint64_t kQuery = 3;
inline constexpr std::uint64_t kPreQuery = 4;
inline constexpr std::uint64_t kBootstrap = 5;
inline constexpr std::uint64_t kGroundTruth = 6;
inline constexpr std::uint64_t kRun = 7;
inline constexpr std::uint64_t kCalibration = 8;
inline constexpr std::uint64_t kLog = 9;
}  // namespace stream

struct RunDiagnostics {
    std::size_t n_queries = 0;
    std::size_t n_dropped_queries = 0;  // below the minimum listing length
};

struct UnmodifiedRun {
    std::vector<QueryRecord> records;
    double mean_outcome = 0.0;
    RunDiagnostics diag;
};

// Full pass with the unmodified ranker (no filter, no priorities).
UnmodifiedRun simulate_unmodified(const std::vector<Item>& pool, const RunConfig& cfg,
                                  const TreatmentPlan& plan, std::uint64_t seed,
                                  std::size_t n_queries, bool keep_items);

struct TsprRun {
    std::vector<QueryRecord> records_a;
    std::vector<QueryRecord> records_b;
    RunDiagnostics diag;
};

// Full pass with the TSPR-modified ranker over a partitioned pool.
// Records are tagged with their ranking arm unless tag_pre_experiment is set.
TsprRun simulate_tspr(const std::vector<Item>& pool, const RunConfig& cfg,
                      const TreatmentPlan& plan, std::uint64_t seed,
                      std::size_t n_queries, std::uint64_t query_stream,
                      bool tag_pre_experiment = false);

// Pool + three-way partition for one experiment replication.
std::vector<Item> make_partitioned_pool(const RunConfig& cfg, std::uint64_t seed);

// Listings for one unmodified-ranker query; used by the figure/diagnostic
// paths that need raw listings rather than records.
Listing simulate_unmodified_query(const std::vector<Item>& pool, const RunConfig& cfg,
                                  const TreatmentPlan& plan, std::uint64_t seed,
                                  std::uint64_t query_index);

struct TsprQueryResult {
    Listing listing;
    Arm arm = Arm::A;
    bool kept = false;  // false when below the minimum listing length
};

// One query through the TSPR pipeline: arm, filter, priority ranking, behavior.
TsprQueryResult simulate_tspr_query(const std::vector<Item>& pool, const RunConfig& cfg,
                                    const TreatmentPlan& plan, std::uint64_t seed,
                                    std::uint64_t query_stream, std::uint64_t query_index);

}  // namespace tspr
