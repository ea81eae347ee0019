#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cvi/core.hpp"

namespace cvi {

/**
 * Dissimilarity between two points.
 *
 * Minkowski returns (sum |x_i - y_i|^p)^(1/p), Euclidean is the p = 2 case
 * and Cosine returns 1 - cos(theta), which lies in [0, 2].
 *
 * Throws std::invalid_argument on a dimension mismatch and std::domain_error
 * when Cosine meets a zero-norm vector.
 */
double distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m);

/// The quantity that replaces ||x - y||^2 in sum-of-squares formulas.
/// Exact sum of squared differences for Euclidean, distance(x, y, m)^2 otherwise.
double squared_distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m);

/// Canonical text form: "euclidean", "cosine" or "minkowski:p=<x>".
std::string to_string(const MetricSpec& m);

/// Dense symmetric N x N matrix of pairwise dissimilarities.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {d_.data() + i * n_, n_}; }

    void set(std::size_t i, std::size_t j, double v) noexcept {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Entry (i, j) = distance(x_i, x_j, m); zero diagonal; symmetric.
DistanceMatrix pairwise_matrix(const Dataset& ds, const MetricSpec& m);

}  // namespace cvi
