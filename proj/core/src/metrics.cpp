#include "cvi/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cvi {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
}

double sum_sq(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double t = x[i] - y[i];
        s += t * t;
    }
    return s;
}

double minkowski_sum(std::span<const double> x, std::span<const double> y, double p) {
    double s = 0.0;
    if (p == 1.0) {
        for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    } else if (p == 0.5) {
        for (std::size_t i = 0; i < x.size(); ++i) s += std::sqrt(std::abs(x[i] - y[i]));
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - y[i]), p);
    }
    return s;
}

double minkowski(std::span<const double> x, std::span<const double> y, double p) {
    if (p == 2.0) return std::sqrt(sum_sq(x, y));
    double s = minkowski_sum(x, y, p);
    if (p == 1.0) return s;
    if (p == 0.5) return s * s;
    return std::pow(s, 1.0 / p);
}

double cosine(std::span<const double> x, std::span<const double> y) {
    double xy = 0.0, xx = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xy += x[i] * y[i];
        xx += x[i] * x[i];
        yy += y[i] * y[i];
    }
    if (xx == 0.0 || yy == 0.0) throw std::domain_error("cosine distance: zero-norm vector");
    if (std::equal(x.begin(), x.end(), y.begin())) return 0.0;
    double c = xy / (std::sqrt(xx) * std::sqrt(yy));
    c = std::clamp(c, -1.0, 1.0);
    return 1.0 - c;
}

}  // namespace

double distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m) {
    check_dims(x, y);
    switch (m.kind) {
        case MetricKind::Euclidean: return std::sqrt(sum_sq(x, y));
        case MetricKind::Minkowski: return minkowski(x, y, m.p);
        case MetricKind::Cosine: return cosine(x, y);
    }
    throw std::invalid_argument("distance: unknown metric");
}

double squared_distance(std::span<const double> x, std::span<const double> y, const MetricSpec& m) {
    check_dims(x, y);
    if (m.kind == MetricKind::Euclidean || (m.kind == MetricKind::Minkowski && m.p == 2.0))
        return sum_sq(x, y);
    double d = distance(x, y, m);
    return d * d;
}

std::string to_string(const MetricSpec& m) {
    switch (m.kind) {
        case MetricKind::Euclidean: return "euclidean";
        case MetricKind::Cosine: return "cosine";
        case MetricKind::Minkowski: {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, m.p);
            return "minkowski:p=" + std::string(buf, res.ptr);
        }
    }
    return "unknown";
}

DistanceMatrix pairwise_matrix(const Dataset& ds, const MetricSpec& m) {
    const std::size_t n = ds.n_points();
    DistanceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = ds.point(i);
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, distance(xi, ds.point(j), m));
    }
    return out;
}

}  // namespace cvi
