#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cvi/core.hpp"

namespace cvi {

struct KMeansOptions {
    std::size_t restarts = 10;
    /// Stop when the relative improvement of the pooled WSS drops below this.
    double tolerance = 1e-6;
    std::size_t max_iterations = 300;
};

/// Result of a single Lloyd run; exposed for testing.
struct LloydTrace {
    std::vector<int> labels;
    double wss = 0.0;
    std::vector<double> wss_history;  ///< pooled WSS after each assignment step
};

/**
 * One seeded run: greedy k-means++ seeding followed by Lloyd iterations
 * with Euclidean assignment. Empty clusters are refilled with the point
 * farthest from its own barycenter.
 */
LloydTrace lloyd_run(const Dataset& ds, std::size_t k, std::uint64_t seed, const KMeansOptions& opts = {});

/**
 * Best of `opts.restarts` Lloyd runs by pooled Euclidean WSS.
 *
 * Restart r uses the stream derive_seed(seed, {K, r}). Deterministic for a
 * given (ds, K, seed, opts). Throws std::invalid_argument unless 1 <= K <= N.
 */
Partition kmeans(const Dataset& ds, std::size_t k, std::uint64_t seed, const KMeansOptions& opts = {});

/// One partition per K in [k_min, k_max], in increasing K. The per-K seed
/// depends only on (seed, K), so the result for a given K does not depend
/// on the rest of the range.
std::vector<Partition> kmeans_sweep(const Dataset& ds, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                                    const KMeansOptions& opts = {});

/// Adjusted Rand index between two labelings of the same points.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace cvi
