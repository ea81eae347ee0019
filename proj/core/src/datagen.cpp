#include "cvi/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cvi/csv.hpp"
#include "cvi/rng.hpp"

namespace cvi {

namespace {

// ceil(f * n) without being pushed up by the rounding error of f * n.
std::size_t fraction_count(double f, std::size_t n) {
    double x = f * static_cast<double>(n);
    return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

std::size_t draw_size(Rng& rng, double mean, double sd) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        double v = std::round(rng.normal(mean, sd));
        if (v >= 2.0) return static_cast<std::size_t>(v);
    }
    throw std::runtime_error("generate: could not draw a cluster size of at least 2");
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::UnivariateGaussian: return "univariate-gaussian";
        case Scheme::MultivariateGaussian: return "multivariate-gaussian";
        case Scheme::UniformNoise: return "uniform-noise";
        case Scheme::IrrelevantFeatures: return "irrelevant-features";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    for (auto s : {Scheme::UnivariateGaussian, Scheme::MultivariateGaussian, Scheme::UniformNoise,
                   Scheme::IrrelevantFeatures})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void SchemeConfig::validate() const {
    if (k_star < 2) throw std::invalid_argument("SchemeConfig: k_star must be at least 2");
    if (dim < 1) throw std::invalid_argument("SchemeConfig: dim must be at least 1");
    if (!(noise_fraction >= 0.0 && noise_fraction < 1.0))
        throw std::invalid_argument("SchemeConfig: noise_fraction must be in [0, 1)");
    if (!(irrelevant_fraction >= 0.0 && irrelevant_fraction < 1.0))
        throw std::invalid_argument("SchemeConfig: irrelevant_fraction must be in [0, 1)");
    if (!(centroid_low < centroid_high)) throw std::invalid_argument("SchemeConfig: empty centroid range");
    if (!(cluster_size_sd >= 0.0)) throw std::invalid_argument("SchemeConfig: negative cluster size sd");
}

SyntheticData generate_detailed(const SchemeConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    const std::size_t d = cfg.dim;
    const bool multivariate = cfg.scheme == Scheme::MultivariateGaussian;
    const bool irrelevant = cfg.scheme == Scheme::IrrelevantFeatures;
    const std::size_t n_irrelevant = irrelevant ? fraction_count(cfg.irrelevant_fraction, d) : 0;

    std::vector<std::vector<double>> centroids(cfg.k_star, std::vector<double>(d));
    std::vector<std::vector<double>> sds(cfg.k_star, std::vector<double>(d, 1.0));
    std::vector<std::vector<bool>> masks(cfg.k_star, std::vector<bool>(d, false));
    std::vector<std::size_t> sizes(cfg.k_star);

    std::vector<std::size_t> perm(d);
    for (std::size_t g = 0; g < cfg.k_star; ++g) {
        for (double& c : centroids[g]) c = rng.uniform(cfg.centroid_low, cfg.centroid_high);
        sizes[g] = draw_size(rng, cfg.cluster_size_mean, cfg.cluster_size_sd);
        if (multivariate)
            for (double& s : sds[g]) s = rng.uniform(0.5, 1.5);
        if (n_irrelevant > 0) {
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t t = 0; t < n_irrelevant; ++t) {
                std::size_t j = t + rng.below(d - t);
                std::swap(perm[t], perm[j]);
                masks[g][perm[t]] = true;
            }
        }
    }

    const std::size_t n_clustered = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    const std::size_t n_noise =
        cfg.scheme == Scheme::UniformNoise ? fraction_count(cfg.noise_fraction, n_clustered) : 0;

    std::vector<double> values;
    values.reserve((n_clustered + n_noise) * d);
    std::vector<int> labels;
    labels.reserve(n_clustered + n_noise);
    for (std::size_t g = 0; g < cfg.k_star; ++g) {
        for (std::size_t i = 0; i < sizes[g]; ++i) {
            for (std::size_t f = 0; f < d; ++f) {
                if (masks[g][f])
                    values.push_back(rng.uniform(cfg.centroid_low, cfg.centroid_high));
                else
                    values.push_back(rng.normal(centroids[g][f], sds[g][f]));
            }
            labels.push_back(static_cast<int>(g));
        }
    }
    for (std::size_t i = 0; i < n_noise; ++i) {
        for (std::size_t f = 0; f < d; ++f) values.push_back(rng.uniform(cfg.centroid_low, cfg.centroid_high));
        labels.push_back(kNoiseLabel);
    }

    const std::size_t n = n_clustered + n_noise;
    return SyntheticData{Dataset(n, d, std::move(values), std::move(labels)),
                         std::move(centroids),
                         std::move(sds),
                         std::move(masks),
                         std::move(sizes),
                         n_noise};
}

DistributionSpec parse_distribution(std::string_view text) {
    if (text == "uniform") return {DistributionKind::Uniform, 0};
    if (text == "gaussian") return {DistributionKind::Gaussian, 0};
    constexpr std::string_view clusters = "clusters:";
    if (text.starts_with(clusters)) {
        auto rest = text.substr(clusters.size());
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (ec == std::errc{} && ptr == rest.data() + rest.size() && n >= 1) return {DistributionKind::Clusters, n};
    }
    constexpr std::string_view irrelevant = "irrelevant:";
    if (text.starts_with(irrelevant)) {
        auto rest = text.substr(irrelevant.size());
        double f = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), f);
        if (ec == std::errc{} && ptr == rest.data() + rest.size() && f >= 0.0 && f < 1.0)
            return {DistributionKind::IrrelevantCluster, 0, f};
    }
    throw std::invalid_argument("unknown distribution '" + std::string(text) + "'");
}

std::string to_string(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistributionKind::Uniform: return "uniform";
        case DistributionKind::Gaussian: return "gaussian";
        case DistributionKind::Clusters: return "clusters:" + std::to_string(spec.n_clusters);
        case DistributionKind::IrrelevantCluster: return "irrelevant:" + format_double(spec.irrelevant_fraction);
    }
    return "?";
}

Dataset generate_distribution(const DistributionSpec& spec, std::size_t n, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(n * dim);
    switch (spec.kind) {
        case DistributionKind::Uniform:
            for (double& v : values) v = rng.uniform(-10.0, 10.0);
            break;
        case DistributionKind::Gaussian:
            for (double& v : values) v = rng.normal();
            break;
        case DistributionKind::Clusters: {
            if (spec.n_clusters < 1) throw std::invalid_argument("generate_distribution: need at least one cluster");
            std::vector<double> centers(spec.n_clusters * dim);
            for (double& c : centers) c = rng.uniform(-10.0, 10.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double* c = centers.data() + (i % spec.n_clusters) * dim;
                for (std::size_t f = 0; f < dim; ++f) values[i * dim + f] = rng.normal(c[f], 1.0);
            }
            break;
        }
        case DistributionKind::IrrelevantCluster: {
            std::vector<double> center(dim);
            for (double& c : center) c = rng.uniform(-10.0, 10.0);
            std::vector<std::size_t> perm(dim);
            std::iota(perm.begin(), perm.end(), 0);
            std::vector<bool> mask(dim, false);
            const std::size_t n_irrelevant = fraction_count(spec.irrelevant_fraction, dim);
            for (std::size_t t = 0; t < n_irrelevant; ++t) {
                std::swap(perm[t], perm[t + rng.below(dim - t)]);
                mask[perm[t]] = true;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t f = 0; f < dim; ++f)
                    values[i * dim + f] = mask[f] ? rng.uniform(-10.0, 10.0) : rng.normal(center[f], 1.0);
            break;
        }
    }
    return Dataset(n, dim, std::move(values));
}

void write_csv(std::ostream& os, const Dataset& ds) {
    for (std::size_t f = 0; f < ds.dim(); ++f) os << 'f' << f << ',';
    os << "label\n";
    const auto& truth = ds.truth_labels();
    for (std::size_t i = 0; i < ds.n_points(); ++i) {
        for (double v : ds.point(i)) os << format_double(v) << ',';
        if (truth) {
            int l = (*truth)[i];
            if (l == kNoiseLabel)
                os << "noise";
            else
                os << l;
        }
        os << '\n';
    }
}

}  // namespace cvi
