#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cvi/core.hpp"
#include "cvi/datagen.hpp"
#include "cvi/metrics.hpp"

namespace cvi {

/// D_max / D_min for one reference point. Throws std::domain_error if the
/// nearest other point coincides with it.
double concentration_ratio_at(const Dataset& ds, std::size_t ref, const MetricSpec& m);

struct ConcentrationOptions {
    /// Above this many points a seeded subsample of reference points is used.
    std::size_t max_reference = 2000;
    std::uint64_t seed = 0;
};

/**
 * Mean of D_max / D_min over the reference points. Reference points whose
 * nearest neighbour is a duplicate are skipped; if all are skipped a
 * std::domain_error is thrown.
 */
double concentration_ratio(const Dataset& ds, const MetricSpec& m, const ConcentrationOptions& opts = {});

/// How often each point appears among the other points' n nearest
/// neighbours (ties broken by point index). Sums to n * N.
std::vector<std::size_t> k_occurrence_counts(const Dataset& ds, std::size_t n, const MetricSpec& m);

/// Population skewness of a sample; 0 when the sample has zero variance.
double skewness(const std::vector<double>& xs);

/// Skewness of the n-occurrence distribution. Requires 1 <= n < N.
double hubness(const Dataset& ds, std::size_t n, const MetricSpec& m);

/// max_i d(x_i, x̄) / mean_i d(x_i, x̄) for the points of a single cluster.
/// Throws std::domain_error when every point sits on the barycenter.
double deformation_ratio(const Dataset& cluster, const MetricSpec& m);

struct DiagnosticsConfig {
    std::vector<DistributionSpec> distributions{
        {DistributionKind::Uniform, 0}, {DistributionKind::Gaussian, 0},
        {DistributionKind::Clusters, 20}, {DistributionKind::Clusters, 50}};
    std::vector<std::size_t> dims{5, 7, 10, 20, 35, 70, 100, 135, 180, 250, 350};
    std::size_t n_points = 1000;
    std::size_t hubness_n = 5;
    MetricSpec metric = MetricSpec::euclidean();
    std::uint64_t seed = 0;
};

struct DiagnosticsRow {
    DistributionSpec distribution;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    double concentration_ratio = 0.0;
    double hubness = 0.0;
    double deformation_ratio = 0.0;  ///< whole dataset taken as one cluster
};

/// Seed shared by every dimension of one distribution (paired seeds).
std::uint64_t distribution_seed(std::uint64_t seed, std::size_t position);

/// One row per (distribution, dim), distribution-major.
std::vector<DiagnosticsRow> run_diagnostics(const DiagnosticsConfig& cfg);

/// distribution,metric,dim,seed,concentration_ratio,hubness,deformation_ratio
void write_diagnostics_csv(std::ostream& os, const DiagnosticsConfig& cfg, const std::vector<DiagnosticsRow>& rows);

}  // namespace cvi
