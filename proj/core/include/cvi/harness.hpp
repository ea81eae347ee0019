#pragma once

/**
 * @file harness.hpp
 * @brief Dimension sweeps: curve transformation, K selection, sensitivity
 * and accuracy aggregated over data realizations.
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvi/core.hpp"
#include "cvi/datagen.hpp"
#include "cvi/indices.hpp"
#include "cvi/kmeans.hpp"

namespace cvi {

/// Index values over a contiguous K range; NaN marks an undefined value.
struct Curve {
    std::size_t k_min = 0;
    std::vector<double> values;

    std::size_t k_max() const noexcept { return k_min + values.size() - 1; }
    bool contains(std::size_t k) const noexcept { return !values.empty() && k >= k_min && k <= k_max(); }
    /// NaN when k is outside the range or the value is undefined.
    double at(std::size_t k) const noexcept;

    static Curve from(std::span<const IndexValue> values);
};

/**
 * m'(K) = |(m(K-1) - m(K)) / (m(K) - m(K+1))| on the interior of the range.
 * A zero denominator or an undefined neighbour gives NaN at that K.
 * Throws std::invalid_argument for curves shorter than 3.
 */
Curve difference_transform(const Curve& curve);

/// The curve on which an index is optimized: the raw curve for Max/Min,
/// the difference transform (to be maximized) for Knee/Elbow.
Curve selection_curve(OptimumType optimum, const Curve& curve);

/// Chosen K; ties go to the smaller K. nullopt if no value is defined.
std::optional<std::size_t> select_k(const IndexSpec& spec, const Curve& curve);

/**
 * Height of the optimum at k_star over its nearest competing neighbour:
 * |m(k*) - max(m(k*-1), m(k*+1))| for maximized curves and
 * |m(k*) - min(m(k*-1), m(k*+1))| for minimized ones. Knee/Elbow indices
 * are measured on their difference transform. NaN if a stencil value is
 * undefined.
 */
double sensitivity(const IndexSpec& spec, const Curve& curve, std::size_t k_star);

/// |m(k*) - m(k*-1)|: the step between the arm and the forearm of an
/// untransformed knee or elbow curve.
double step_sensitivity(const Curve& curve, std::size_t k_star);

/// s_minus at the three partitions K = k*-1, k*, k*+1 (Euclidean pairs).
std::array<std::uint64_t, 3> s_minus_probe(const Dataset& ds, std::span<const Partition, 3> parts);

struct ExperimentConfig {
    SchemeConfig scheme;  ///< `dim` is overwritten per sweep point
    std::vector<std::size_t> dims{5, 7, 10, 20, 35, 70, 100, 135, 180};
    std::size_t realizations = 20;
    std::size_t k_min = 2;
    std::size_t k_max = 8;
    std::vector<MetricSpec> metrics{MetricSpec::euclidean()};
    std::vector<IndexId> indices;  ///< empty means all 24
    std::uint64_t master_seed = 0;
    KMeansOptions kmeans;
    EvaluatorOptions evaluator;
    /// Worker threads; 0 reads CVI_BENCH_THREADS, falling back to the
    /// hardware concurrency.
    std::size_t threads = 0;

    /// The full protocol: 11 dimensions up to 350 and 100 realizations.
    static ExperimentConfig full_protocol(SchemeConfig scheme);

    /// K range {2, ..., k*+3}.
    void set_default_k_range();

    std::vector<IndexId> effective_indices() const;

    /// Throws std::invalid_argument when the config cannot be run.
    void validate() const;
};

/// Seed of one (dim, realization) cell.
std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t dim, std::size_t realization);

/// One index/metric curve from one realization.
struct RealizationRecord {
    IndexId index{};
    std::size_t metric = 0;  ///< position in ExperimentConfig::metrics
    std::size_t dim = 0;
    std::size_t realization = 0;
    Curve curve;
    std::optional<std::size_t> selected_k;
    double sensitivity = 0.0;  ///< NaN when undefined
};

/// Per-realization facts that do not depend on the index.
struct RealizationInfo {
    std::size_t dim = 0;
    std::size_t realization = 0;
    std::uint64_t seed = 0;
    std::size_t n_points = 0;
    double ari_at_k_star = 0.0;  ///< k-means at K = k* vs truth, noise points excluded
    std::optional<std::array<std::uint64_t, 3>> s_minus;  ///< at k*-1, k*, k*+1
    std::string error;  ///< non-empty if the realization could not be run
};

struct SweepCell {
    IndexId index{};
    std::size_t metric = 0;
    std::size_t dim = 0;
    double mean_sensitivity = 0.0;      ///< NaN if no realization defined it
    double relative_sensitivity = 0.0;  ///< NaN if the baseline is zero or undefined
    double accuracy = 0.0;
    std::size_t n_defined = 0;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepCell> cells;            ///< index-major, then metric, then dim
    std::vector<RealizationRecord> records;  ///< dim, realization, metric, index order
    std::vector<RealizationInfo> realizations;

    const SweepCell& cell(IndexId index, std::size_t metric, std::size_t dim) const;
    std::vector<const RealizationRecord*> records_for(IndexId index, std::size_t metric, std::size_t dim) const;
};

/// Aggregates records (any order) into cells; exposed for testing.
std::vector<SweepCell> aggregate(const ExperimentConfig& cfg, std::span<const RealizationRecord> records);

/// Runs every (dim, realization) cell, possibly in parallel. The result
/// depends only on the config.
SweepResult run_sweep(const ExperimentConfig& cfg);

/// sweep.csv: index,metric,scheme,dim,mean_sensitivity,relative_sensitivity,accuracy,n_defined
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// raw.csv: one row per realization record; `curve` holds m(K) for
/// K = k_min..k_max joined by ';'.
void write_raw_csv(std::ostream& os, const SweepResult& result);
/// key=value echo of the config, seeds and library version.
void write_metadata(std::ostream& os, const SweepResult& result);

/// Number of worker threads to use for a requested count (0 = automatic).
std::size_t resolve_threads(std::size_t requested);

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace cvi
