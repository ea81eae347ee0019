#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cvi/core.hpp"
#include "oracle.hpp"

namespace fixtures {

/// A small random dataset with a random partition that has no empty cluster.
struct Micro {
    oracle::Points points;
    oracle::Labels labels;
    int k = 0;

    cvi::Dataset dataset() const {
        std::vector<double> flat;
        for (const auto& p : points) flat.insert(flat.end(), p.begin(), p.end());
        return cvi::Dataset(points.size(), points[0].size(), std::move(flat));
    }
};

inline oracle::Labels random_labels(std::mt19937_64& gen, std::size_t n, int k) {
    oracle::Labels l(n);
    for (int c = 0; c < k; ++c) l[static_cast<std::size_t>(c)] = c;
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i)
        l[i] = static_cast<int>(std::uniform_int_distribution<int>(0, k - 1)(gen));
    std::shuffle(l.begin(), l.end(), gen);
    return l;
}

/// Coordinates in [-5, 5]; `grid` rounds them to integers so distance ties occur.
inline Micro random_micro(std::uint64_t seed, std::size_t n_max = 12, std::size_t d_max = 3, int k_max = 3,
                          bool grid = false, std::size_t d_min = 1) {
    std::mt19937_64 gen(seed);
    Micro m;
    std::size_t n = std::uniform_int_distribution<std::size_t>(static_cast<std::size_t>(k_max) + 3, n_max)(gen);
    std::size_t d = std::uniform_int_distribution<std::size_t>(d_min, d_max)(gen);
    m.k = std::uniform_int_distribution<int>(2, k_max)(gen);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    m.points.assign(n, std::vector<double>(d));
    for (auto& p : m.points)
        for (double& v : p) v = grid ? std::round(u(gen)) : u(gen);
    if (grid)  // cosine needs nonzero vectors
        for (auto& p : m.points) p[0] = p[0] == 0.0 ? 1.0 : p[0];
    m.labels = random_labels(gen, n, m.k);
    return m;
}

inline bool close(double a, double b, double rel = 1e-9, double abs_floor = 1e-12) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

/// Cosine dissimilarity on 1-d data only takes the values 0 and 2, so
/// cosine cases start at d = 2.
inline std::size_t min_dim(const cvi::MetricSpec& m) { return m.kind == cvi::MetricKind::Cosine ? 2 : 1; }

inline cvi::MetricSpec metric_for(std::size_t i) {
    switch (i % 4) {
        case 0: return cvi::MetricSpec::euclidean();
        case 1: return cvi::MetricSpec::minkowski(1.0);
        case 2: return cvi::MetricSpec::minkowski(0.5);
        default: return cvi::MetricSpec::cosine();
    }
}

}  // namespace fixtures
