#pragma once

/**
 * @file core.hpp
 * @brief Domain types shared by every module: datasets, partitions,
 * index identities and metric descriptions.
 *
 * All types are immutable after construction and can be shared freely
 * between threads.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cvi {

/// Truth label carried by uniform noise points.
inline constexpr int kNoiseLabel = -1;

/**
 * @brief An N x d matrix of finite coordinates with optional ground truth.
 *
 * Coordinates are stored row-major. Truth labels, when present, are group
 * ids in [0, G) with every id occurring at least once; points that belong
 * to no group carry kNoiseLabel.
 */
class Dataset {
public:
    Dataset(std::size_t n_points, std::size_t dim, std::vector<double> row_major,
            std::optional<std::vector<int>> truth_labels = std::nullopt);

    std::size_t n_points() const noexcept { return n_points_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {values_.data() + i * dim_, dim_};
    }
    std::span<const double> values() const noexcept { return values_; }

    bool has_truth() const noexcept { return truth_.has_value(); }
    const std::optional<std::vector<int>>& truth_labels() const noexcept { return truth_; }

    /// Number of distinct non-noise groups in the truth labels (0 without truth).
    std::size_t n_groups() const noexcept { return n_groups_; }

    /// Rows at the given indices, in the given order, without truth labels.
    Dataset subset(std::span<const std::size_t> rows) const;

    /// Coordinate mean over all points.
    std::vector<double> barycenter() const;

private:
    std::size_t n_points_;
    std::size_t dim_;
    std::vector<double> values_;
    std::optional<std::vector<int>> truth_;
    std::size_t n_groups_ = 0;
};

/**
 * @brief Hard assignment of a dataset's points into K non-empty clusters.
 *
 * Barycenters and sizes are computed once at construction; every index
 * reads them from here.
 */
class Partition {
public:
    /// Throws std::invalid_argument on length mismatch, ids outside [0, K)
    /// or an empty cluster.
    Partition(const Dataset& ds, std::vector<int> labels, std::size_t n_clusters);

    /// Deduces K as 1 + max label.
    Partition(const Dataset& ds, std::vector<int> labels);

    std::size_t n_clusters() const noexcept { return n_clusters_; }
    std::size_t n_points() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return dim_; }

    const std::vector<int>& labels() const noexcept { return labels_; }
    int label(std::size_t i) const noexcept { return labels_[i]; }

    const std::vector<std::size_t>& cluster_sizes() const noexcept { return sizes_; }
    std::size_t cluster_size(std::size_t k) const noexcept { return sizes_[k]; }

    std::span<const double> barycenter(std::size_t k) const noexcept {
        return {barycenters_.data() + k * dim_, dim_};
    }

    /// Point indices of cluster k in increasing order.
    const std::vector<std::size_t>& members(std::size_t k) const noexcept { return members_[k]; }

private:
    std::vector<int> labels_;
    std::size_t n_clusters_;
    std::size_t dim_;
    std::vector<std::size_t> sizes_;
    std::vector<double> barycenters_;
    std::vector<std::vector<std::size_t>> members_;
};

enum class OptimumType { Max, Min, Knee, Elbow };
enum class IndexClass { W, WB, WD, WBD };

enum class IndexId : std::uint8_t {
    BakerHubertGamma,
    BallHall,
    BanfieldRaftery,
    Bic,
    CIndex,
    CalinskiHarabasz,
    DaviesBouldin,
    Dunn,
    GPlus,
    Isolation,
    KrzanowskiLai,
    Hartigan,
    McClainRao,
    Pbm,
    PointBiserial,
    Rmsstd,
    Rs,
    RayTuri,
    SDbw,
    Silhouette,
    Tau,
    TraceW,
    WemmertGancarski,
    XieBeni,
};

inline constexpr std::size_t kIndexCount = 24;

struct IndexSpec {
    IndexId id;
    OptimumType optimum;
    IndexClass index_class;

    friend bool operator==(const IndexSpec&, const IndexSpec&) = default;
};

enum class MetricKind { Euclidean, Minkowski, Cosine };

/// Dissimilarity used inside the indices. `p` only matters for Minkowski.
struct MetricSpec {
    MetricKind kind = MetricKind::Euclidean;
    double p = 2.0;

    static MetricSpec euclidean() { return {MetricKind::Euclidean, 2.0}; }
    static MetricSpec minkowski(double p);
    static MetricSpec cosine() { return {MetricKind::Cosine, 2.0}; }

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

std::string_view to_string(OptimumType t);
std::string_view to_string(IndexClass c);

}  // namespace cvi
