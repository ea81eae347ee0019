#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cvi/core.hpp"

namespace cvi {

enum class Scheme { UnivariateGaussian, MultivariateGaussian, UniformNoise, IrrelevantFeatures };

std::string_view to_string(Scheme s);
/// Accepts the kebab-case names ("univariate-gaussian", ...).
Scheme parse_scheme(std::string_view name);

struct SchemeConfig {
    Scheme scheme = Scheme::UnivariateGaussian;
    std::size_t k_star = 5;
    std::size_t dim = 5;
    double noise_fraction = 0.0;       ///< UniformNoise only
    double irrelevant_fraction = 0.0;  ///< IrrelevantFeatures only
    double centroid_low = -10.0;
    double centroid_high = 10.0;
    double cluster_size_mean = 200.0;
    double cluster_size_sd = 10.0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// A generated dataset together with the generating parameters.
struct SyntheticData {
    Dataset dataset;
    std::vector<std::vector<double>> centroids;        ///< per group
    std::vector<std::vector<double>> feature_sd;       ///< per group, per feature
    std::vector<std::vector<bool>> irrelevant;         ///< per group, per feature
    std::vector<std::size_t> group_sizes;
    std::size_t n_noise = 0;
};

/**
 * Draws one realization of a synthetic scheme.
 *
 * Draw order per group: centroid, size (Normal(mean, sd) rounded, redrawn
 * up to 100 times while below 2), per-feature sd (MultivariateGaussian,
 * U[0.5, 1.5]), irrelevant feature subset (IrrelevantFeatures), then the
 * points row by row. Noise points come last: ceil(noise_fraction * N)
 * points uniform on the centroid box, labelled kNoiseLabel.
 */
SyntheticData generate_detailed(const SchemeConfig& cfg, std::uint64_t seed);

inline Dataset generate(const SchemeConfig& cfg, std::uint64_t seed) {
    return generate_detailed(cfg, seed).dataset;
}

/// Reference distributions for the concentration/hubness diagnostics.
enum class DistributionKind { Uniform, Gaussian, Clusters, IrrelevantCluster };

struct DistributionSpec {
    DistributionKind kind = DistributionKind::Uniform;
    std::size_t n_clusters = 0;        ///< Clusters only
    double irrelevant_fraction = 0.0;  ///< IrrelevantCluster only

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// "uniform", "gaussian", "clusters:<n>" or "irrelevant:<fraction>".
/// Throws std::invalid_argument otherwise.
DistributionSpec parse_distribution(std::string_view text);
std::string to_string(const DistributionSpec& spec);

/**
 * N points of a reference distribution: uniform on [-10, 10]^d, standard
 * Gaussian, `n_clusters` unit-variance Gaussian clusters with centroids
 * uniform on [-10, 10]^d and points assigned round-robin, or a single
 * unit-variance cluster with ceil(fraction * d) randomly chosen features
 * replaced by uniform draws on [-10, 10].
 */
Dataset generate_distribution(const DistributionSpec& spec, std::size_t n, std::size_t dim, std::uint64_t seed);

/// Headered CSV: f0..f{d-1},label. Noise points get the label "noise",
/// datasets without truth get an empty label column.
void write_csv(std::ostream& os, const Dataset& ds);

}  // namespace cvi
