#pragma once

/**
 * @file indices.hpp
 * @brief The 24 relative validity indices and their registry.
 *
 * Every index reads the same per-partition building blocks (cluster sums of
 * squares, barycenter distances, pair statistics, linkage extremes) and
 * substitutes the chosen dissimilarity wherever the Euclidean formula has a
 * distance: squared_distance() where a squared norm appears and distance()
 * where a plain norm appears. Barycenters are always coordinate means.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvi/base_stats.hpp"
#include "cvi/core.hpp"
#include "cvi/metrics.hpp"

namespace cvi {

struct IndexInfo {
    IndexId id;
    std::string_view key;   ///< lower-kebab identifier used on the command line
    std::string_view name;  ///< display name
    OptimumType optimum;
    IndexClass index_class;
};

/// All 24 indices in registry order.
std::span<const IndexInfo> index_registry();
const IndexInfo& index_info(IndexId id);
IndexSpec index_spec(IndexId id);
std::vector<IndexSpec> all_index_specs();
std::optional<IndexId> find_index(std::string_view key);

/// Value of one index at one K. An undefined value carries NaN and a reason.
struct IndexValue {
    IndexId id{};
    std::size_t n_clusters = 0;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string undefined_reason;

    bool defined() const noexcept { return undefined_reason.empty(); }
};

struct EvaluatorOptions {
    /// Neighborhood size of the isolation index.
    std::size_t isolation_neighbors = 10;
};

/**
 * Evaluates indices for partitions of one dataset under one metric.
 *
 * Partition-independent work (pairwise matrix, sorted pair list, nearest
 * neighbor lists) is computed on first use and reused. Thread-safe for
 * concurrent const calls. The dataset must outlive the evaluator.
 */
class Evaluator {
public:
    Evaluator(const Dataset& ds, MetricSpec metric, EvaluatorOptions opts = {});
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    const Dataset& dataset() const noexcept { return ds_; }
    const MetricSpec& metric() const noexcept { return metric_; }
    const EvaluatorOptions& options() const noexcept { return opts_; }

    /// Krzanowski-Lai needs the neighboring partitions and is reported
    /// undefined here; use evaluate_curve for it.
    IndexValue evaluate(IndexId id, const Partition& part) const;

    /// One value per partition. Partitions must have contiguous K in
    /// increasing order; per-K failures come back as undefined values.
    std::vector<IndexValue> evaluate_curve(IndexId id, std::span<const Partition> parts) const;

    /// Curves for several indices at once; result[i] belongs to ids[i].
    std::vector<std::vector<IndexValue>> evaluate_curves(std::span<const IndexId> ids,
                                                         std::span<const Partition> parts) const;

    const DistanceMatrix& distances() const;
    const SortedPairs& sorted_pairs() const;
    /// For every point, its `isolation_neighbors` nearest other points,
    /// nearest first, ties broken by point index.
    const std::vector<std::vector<std::uint32_t>>& neighbor_lists() const;
    double total_sum_of_squares() const;

private:
    const Dataset& ds_;
    MetricSpec metric_;
    EvaluatorOptions opts_;

    mutable std::once_flag dm_once_, pairs_once_, nn_once_, tss_once_;
    mutable DistanceMatrix dm_;
    mutable std::unique_ptr<SortedPairs> pairs_;
    mutable std::vector<std::vector<std::uint32_t>> nn_;
    mutable double tss_ = 0.0;
};

IndexValue evaluate(const IndexSpec& spec, const Dataset& ds, const Partition& part, const MetricSpec& m);

std::vector<IndexValue> evaluate_curve(const IndexSpec& spec, const Dataset& ds,
                                       std::span<const Partition> parts, const MetricSpec& m);

}  // namespace cvi
