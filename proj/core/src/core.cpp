#include "cvi/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cvi {

Dataset::Dataset(std::size_t n_points, std::size_t dim, std::vector<double> row_major,
                 std::optional<std::vector<int>> truth_labels)
    : n_points_(n_points), dim_(dim), values_(std::move(row_major)), truth_(std::move(truth_labels)) {
    if (n_points_ < 2) throw std::invalid_argument("Dataset: need at least 2 points");
    if (dim_ < 1) throw std::invalid_argument("Dataset: dimension must be at least 1");
    if (values_.size() != n_points_ * dim_)
        throw std::invalid_argument("Dataset: buffer size " + std::to_string(values_.size()) +
                                    " does not match " + std::to_string(n_points_) + "x" +
                                    std::to_string(dim_));
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite coordinate");
    }
    if (truth_) {
        const auto& t = *truth_;
        if (t.size() != n_points_) throw std::invalid_argument("Dataset: truth label count mismatch");
        int max_label = kNoiseLabel;
        for (int l : t) {
            if (l < kNoiseLabel) throw std::invalid_argument("Dataset: negative truth label");
            max_label = std::max(max_label, l);
        }
        std::vector<bool> seen(static_cast<std::size_t>(max_label + 1), false);
        for (int l : t) {
            if (l >= 0) seen[static_cast<std::size_t>(l)] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw std::invalid_argument("Dataset: truth group ids are not contiguous");
        n_groups_ = seen.size();
    }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    std::vector<double> v;
    v.reserve(rows.size() * dim_);
    for (std::size_t r : rows) {
        if (r >= n_points_) throw std::out_of_range("Dataset::subset: row out of range");
        auto p = point(r);
        v.insert(v.end(), p.begin(), p.end());
    }
    return Dataset(rows.size(), dim_, std::move(v));
}

std::vector<double> Dataset::barycenter() const {
    std::vector<double> c(dim_, 0.0);
    for (std::size_t i = 0; i < n_points_; ++i) {
        auto p = point(i);
        for (std::size_t f = 0; f < dim_; ++f) c[f] += p[f];
    }
    for (double& x : c) x /= static_cast<double>(n_points_);
    return c;
}

namespace {

std::size_t deduce_k(const std::vector<int>& labels) {
    if (labels.empty()) throw std::invalid_argument("Partition: no labels");
    int m = *std::max_element(labels.begin(), labels.end());
    if (m < 0) throw std::invalid_argument("Partition: negative cluster id");
    return static_cast<std::size_t>(m) + 1;
}

}  // namespace

Partition::Partition(const Dataset& ds, std::vector<int> labels)
    : Partition(ds, labels, deduce_k(labels)) {}

Partition::Partition(const Dataset& ds, std::vector<int> labels, std::size_t n_clusters)
    : labels_(std::move(labels)), n_clusters_(n_clusters), dim_(ds.dim()) {
    if (labels_.size() != ds.n_points())
        throw std::invalid_argument("Partition: label count does not match dataset");
    if (n_clusters_ < 1) throw std::invalid_argument("Partition: K must be at least 1");
    sizes_.assign(n_clusters_, 0);
    members_.resize(n_clusters_);
    barycenters_.assign(n_clusters_ * dim_, 0.0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        int l = labels_[i];
        if (l < 0 || static_cast<std::size_t>(l) >= n_clusters_)
            throw std::invalid_argument("Partition: cluster id " + std::to_string(l) +
                                        " outside [0, " + std::to_string(n_clusters_) + ")");
        auto k = static_cast<std::size_t>(l);
        ++sizes_[k];
        members_[k].push_back(i);
        auto p = ds.point(i);
        for (std::size_t f = 0; f < dim_; ++f) barycenters_[k * dim_ + f] += p[f];
    }
    for (std::size_t k = 0; k < n_clusters_; ++k) {
        if (sizes_[k] == 0)
            throw std::invalid_argument("Partition: cluster " + std::to_string(k) + " is empty");
        for (std::size_t f = 0; f < dim_; ++f)
            barycenters_[k * dim_ + f] /= static_cast<double>(sizes_[k]);
    }
}

MetricSpec MetricSpec::minkowski(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("MetricSpec: Minkowski exponent must be positive and finite");
    return {MetricKind::Minkowski, p};
}

std::string_view to_string(OptimumType t) {
    switch (t) {
        case OptimumType::Max: return "Max";
        case OptimumType::Min: return "Min";
        case OptimumType::Knee: return "Knee";
        case OptimumType::Elbow: return "Elbow";
    }
    return "?";
}

std::string_view to_string(IndexClass c) {
    switch (c) {
        case IndexClass::W: return "W";
        case IndexClass::WB: return "WB";
        case IndexClass::WD: return "WD";
        case IndexClass::WBD: return "WBD";
    }
    return "?";
}

}  // namespace cvi
