#include "cvi/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cvi/csv.hpp"
#include "cvi/rng.hpp"

namespace cvi {

namespace {

struct Extremes {
    double nearest;
    double farthest;
};

Extremes extremes(const Dataset& ds, std::size_t ref, const MetricSpec& m) {
    Extremes e{std::numeric_limits<double>::infinity(), 0.0};
    auto x = ds.point(ref);
    for (std::size_t j = 0; j < ds.n_points(); ++j) {
        if (j == ref) continue;
        double v = distance(x, ds.point(j), m);
        e.nearest = std::min(e.nearest, v);
        e.farthest = std::max(e.farthest, v);
    }
    return e;
}

}  // namespace

double concentration_ratio_at(const Dataset& ds, std::size_t ref, const MetricSpec& m) {
    if (ref >= ds.n_points()) throw std::out_of_range("concentration_ratio_at: reference out of range");
    auto e = extremes(ds, ref, m);
    if (e.nearest == 0.0) throw std::domain_error("concentration_ratio_at: duplicate nearest point");
    return e.farthest / e.nearest;
}

double concentration_ratio(const Dataset& ds, const MetricSpec& m, const ConcentrationOptions& opts) {
    const std::size_t n = ds.n_points();
    std::vector<std::size_t> refs(n);
    std::iota(refs.begin(), refs.end(), 0);
    if (opts.max_reference > 0 && n > opts.max_reference) {
        Rng rng(opts.seed);
        for (std::size_t t = 0; t < opts.max_reference; ++t) std::swap(refs[t], refs[t + rng.below(n - t)]);
        refs.resize(opts.max_reference);
        std::sort(refs.begin(), refs.end());
    }
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t r : refs) {
        auto e = extremes(ds, r, m);
        if (e.nearest == 0.0) continue;
        sum += e.farthest / e.nearest;
        ++used;
    }
    if (used == 0) throw std::domain_error("concentration_ratio: every reference point has a duplicate");
    return sum / static_cast<double>(used);
}

std::vector<std::size_t> k_occurrence_counts(const Dataset& ds, std::size_t n, const MetricSpec& m) {
    const std::size_t total = ds.n_points();
    if (n < 1 || n >= total) throw std::invalid_argument("hubness: neighbourhood size must be in [1, N)");
    std::vector<std::size_t> counts(total, 0);
    std::vector<double> row(total);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < total; ++i) {
        auto x = ds.point(i);
        order.clear();
        for (std::size_t j = 0; j < total; ++j) {
            if (j == i) continue;
            row[j] = distance(x, ds.point(j), m);
            order.push_back(j);
        }
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                          [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] < row[b] : a < b; });
        for (std::size_t t = 0; t < n; ++t) ++counts[order[t]];
    }
    return counts;
}

double skewness(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    const double n = static_cast<double>(xs.size());
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0;
    for (double x : xs) {
        double t = x - mean;
        m2 += t * t;
        m3 += t * t * t;
    }
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

double hubness(const Dataset& ds, std::size_t n, const MetricSpec& m) {
    auto counts = k_occurrence_counts(ds, n, m);
    std::vector<double> xs(counts.begin(), counts.end());
    return skewness(xs);
}

double deformation_ratio(const Dataset& cluster, const MetricSpec& m) {
    auto center = cluster.barycenter();
    double max_d = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < cluster.n_points(); ++i) {
        double v = distance(cluster.point(i), center, m);
        max_d = std::max(max_d, v);
        sum += v;
    }
    if (sum == 0.0) throw std::domain_error("deformation_ratio: all points on the barycenter");
    // max >= mean holds exactly; the clamp absorbs rounding in the mean.
    return std::max(1.0, max_d / (sum / static_cast<double>(cluster.n_points())));
}

std::uint64_t distribution_seed(std::uint64_t seed, std::size_t position) { return derive_seed(seed, {position}); }

std::vector<DiagnosticsRow> run_diagnostics(const DiagnosticsConfig& cfg) {
    if (cfg.n_points < 2) throw std::invalid_argument("diagnostics: need at least 2 points");
    if (cfg.hubness_n < 1 || cfg.hubness_n >= cfg.n_points)
        throw std::invalid_argument("diagnostics: hubness n must be in [1, N)");
    std::vector<DiagnosticsRow> rows;
    for (std::size_t j = 0; j < cfg.distributions.size(); ++j) {
        const auto seed = distribution_seed(cfg.seed, j);
        for (std::size_t d : cfg.dims) {
            if (d < 1) throw std::invalid_argument("diagnostics: dimension must be at least 1");
            auto ds = generate_distribution(cfg.distributions[j], cfg.n_points, d, seed);
            DiagnosticsRow row;
            row.distribution = cfg.distributions[j];
            row.dim = d;
            row.seed = seed;
            row.concentration_ratio = concentration_ratio(ds, cfg.metric, {.max_reference = 2000, .seed = seed});
            row.hubness = hubness(ds, cfg.hubness_n, cfg.metric);
            row.deformation_ratio = deformation_ratio(ds, cfg.metric);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsConfig& cfg, const std::vector<DiagnosticsRow>& rows) {
    os << csv_row({"distribution", "metric", "dim", "seed", "concentration_ratio", "hubness", "deformation_ratio"});
    const auto metric = to_string(cfg.metric);
    for (const auto& r : rows)
        os << csv_row({to_string(r.distribution), metric, std::to_string(r.dim), std::to_string(r.seed),
                       format_double(r.concentration_ratio), format_double(r.hubness),
                       format_double(r.deformation_ratio)});
}

}  // namespace cvi
