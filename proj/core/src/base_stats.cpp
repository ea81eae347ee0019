#include "cvi/base_stats.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cvi {

double wss_k(const Dataset& ds, const Partition& part, std::size_t k, const MetricSpec& m) {
    if (k >= part.n_clusters())
        throw std::invalid_argument("wss_k: cluster id " + std::to_string(k) + " out of range");
    auto c = part.barycenter(k);
    double s = 0.0;
    for (std::size_t i : part.members(k)) s += squared_distance(ds.point(i), c, m);
    return s;
}

std::vector<double> cluster_wss(const Dataset& ds, const Partition& part, const MetricSpec& m) {
    std::vector<double> out(part.n_clusters());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = wss_k(ds, part, k, m);
    return out;
}

double pooled_wss(const Dataset& ds, const Partition& part, const MetricSpec& m) {
    double s = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k) s += wss_k(ds, part, k, m);
    return s;
}

double bss(const Dataset& ds, const Partition& part, const MetricSpec& m) {
    auto center = ds.barycenter();
    double s = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k)
        s += static_cast<double>(part.cluster_size(k)) * squared_distance(part.barycenter(k), center, m);
    return s;
}

double tss(const Dataset& ds, const MetricSpec& m) {
    auto center = ds.barycenter();
    double s = 0.0;
    for (std::size_t i = 0; i < ds.n_points(); ++i) s += squared_distance(ds.point(i), center, m);
    return s;
}

SortedPairs::SortedPairs(const DistanceMatrix& dm) : n_(dm.size()) {
    if (n_ > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("SortedPairs: too many points");
    pairs_.reserve(n_ * (n_ - 1) / 2);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            pairs_.push_back({dm(i, j), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    std::sort(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    prefix_.resize(pairs_.size() + 1);
    prefix_[0] = 0.0L;
    for (std::size_t r = 0; r < pairs_.size(); ++r) prefix_[r + 1] = prefix_[r] + pairs_[r].d;
}

PairCounts SortedPairs::counts(const Partition& part) const {
    if (part.n_points() != n_) throw std::invalid_argument("SortedPairs: partition size mismatch");
    const auto& labels = part.labels();
    PairCounts pc;
    pc.n_total = pairs_.size();
    for (std::size_t k = 0; k < part.n_clusters(); ++k) {
        std::uint64_t nk = part.cluster_size(k);
        pc.n_within += nk * (nk - 1) / 2;
    }
    pc.n_between = pc.n_total - pc.n_within;

    long double sw = 0.0L, sb = 0.0L;
    std::uint64_t between_before = 0;
    std::size_t r = 0;
    while (r < pairs_.size()) {
        std::size_t end = r;
        std::uint64_t w = 0, b = 0;
        while (end < pairs_.size() && pairs_[end].d == pairs_[r].d) {
            const auto& p = pairs_[end];
            if (labels[p.i] == labels[p.j]) {
                ++w;
                sw += p.d;
            } else {
                ++b;
                sb += p.d;
            }
            ++end;
        }
        pc.s_minus += w * between_before;
        pc.s_plus += w * (pc.n_between - between_before - b);
        between_before += b;
        r = end;
    }
    pc.sum_within = static_cast<double>(sw);
    pc.sum_between = static_cast<double>(sb);
    pc.sum_min = static_cast<double>(prefix_[pc.n_within]);
    pc.sum_max = static_cast<double>(prefix_.back() - prefix_[pairs_.size() - pc.n_within]);
    return pc;
}

PairCounts pair_counts(const Dataset& ds, const Partition& part, const MetricSpec& m) {
    return SortedPairs(pairwise_matrix(ds, m)).counts(part);
}

}  // namespace cvi
