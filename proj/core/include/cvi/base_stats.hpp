#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cvi/core.hpp"
#include "cvi/metrics.hpp"

namespace cvi {

/// Sum of squared dissimilarities of cluster k's points to its barycenter.
/// Throws std::invalid_argument if k >= K.
double wss_k(const Dataset& ds, const Partition& part, std::size_t k, const MetricSpec& m);

/// wss_k for every cluster, in cluster order.
std::vector<double> cluster_wss(const Dataset& ds, const Partition& part, const MetricSpec& m);

/// Pooled within-cluster sum of squares, sum over k of wss_k.
double pooled_wss(const Dataset& ds, const Partition& part, const MetricSpec& m);

/// Between-cluster dispersion, sum over k of n_k * d(x̄_k, x̄)^2.
double bss(const Dataset& ds, const Partition& part, const MetricSpec& m);

/// Total sum of squares about the data barycenter.
double tss(const Dataset& ds, const MetricSpec& m);

/**
 * Pair statistics shared by the pair-based indices.
 *
 * s_plus counts (within pair, between pair) comparisons where the within
 * distance is strictly smaller, s_minus where it is strictly larger. Exact
 * ties count toward neither.
 */
struct PairCounts {
    std::uint64_t s_plus = 0;
    std::uint64_t s_minus = 0;
    std::uint64_t n_within = 0;
    std::uint64_t n_between = 0;
    std::uint64_t n_total = 0;
    double sum_within = 0.0;
    double sum_between = 0.0;
    double sum_min = 0.0;  ///< sum of the n_within smallest pair distances
    double sum_max = 0.0;  ///< sum of the n_within largest pair distances
};

/**
 * All N(N-1)/2 pair distances of a dataset, sorted once.
 *
 * Pair counts for any partition of the same dataset then take a single
 * linear sweep: each within pair picks up the number of between pairs
 * already passed (strictly smaller) and the number still ahead (strictly
 * larger), with equal-distance runs handled as a block.
 */
class SortedPairs {
public:
    explicit SortedPairs(const DistanceMatrix& dm);

    std::size_t n_points() const noexcept { return n_; }
    std::size_t n_pairs() const noexcept { return pairs_.size(); }

    PairCounts counts(const Partition& part) const;

private:
    struct Pair {
        double d;
        std::uint32_t i;
        std::uint32_t j;
    };
    std::size_t n_ = 0;
    std::vector<Pair> pairs_;
    std::vector<long double> prefix_;  // prefix_[r] = sum of the r smallest distances
};

PairCounts pair_counts(const Dataset& ds, const Partition& part, const MetricSpec& m);

}  // namespace cvi
