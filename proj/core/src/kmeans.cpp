#include "cvi/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "cvi/rng.hpp"

namespace cvi {

namespace {

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t f = 0; f < d; ++f) {
        double t = a[f] - b[f];
        s += t * t;
    }
    return s;
}

struct Workspace {
    const Dataset& ds;
    std::size_t k;
    std::size_t n;
    std::size_t d;
    std::vector<double> centers;  // k x d
    std::vector<int> labels;
    std::vector<double> dist;  // squared distance of each point to its center
    std::vector<std::size_t> sizes;

    Workspace(const Dataset& data, std::size_t kk)
        : ds(data), k(kk), n(data.n_points()), d(data.dim()), centers(kk * data.dim()),
          labels(data.n_points(), -1), dist(data.n_points()), sizes(kk) {}

    const double* pt(std::size_t i) const { return ds.values().data() + i * d; }
    double* center(std::size_t c) { return centers.data() + c * d; }

    void seed_centers(Rng& rng) {
        const std::size_t candidates = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
        std::size_t first = rng.below(n);
        std::copy_n(pt(first), d, center(0));
        std::vector<double> best(n);
        for (std::size_t i = 0; i < n; ++i) best[i] = sq_dist(pt(i), center(0), d);

        std::vector<double> trial(n), chosen_best(n);
        for (std::size_t c = 1; c < k; ++c) {
            double total = 0.0;
            for (double b : best) total += b;
            double best_potential = std::numeric_limits<double>::infinity();
            std::size_t best_pick = 0;
            for (std::size_t t = 0; t < candidates; ++t) {
                std::size_t pick;
                if (total > 0.0) {
                    double target = rng.uniform01() * total;
                    double acc = 0.0;
                    pick = n - 1;
                    for (std::size_t i = 0; i < n; ++i) {
                        acc += best[i];
                        if (acc > target) {
                            pick = i;
                            break;
                        }
                    }
                } else {
                    pick = rng.below(n);
                }
                double potential = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    trial[i] = std::min(best[i], sq_dist(pt(i), pt(pick), d));
                    potential += trial[i];
                }
                if (potential < best_potential) {
                    best_potential = potential;
                    best_pick = pick;
                    chosen_best.swap(trial);
                }
            }
            std::copy_n(pt(best_pick), d, center(c));
            best.swap(chosen_best);
            chosen_best.resize(n);
        }
    }

    /// Returns true if any label changed.
    bool assign() {
        bool changed = false;
        std::fill(sizes.begin(), sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            int arg = 0;
            double bestd = sq_dist(pt(i), center(0), d);
            for (std::size_t c = 1; c < k; ++c) {
                double v = sq_dist(pt(i), center(c), d);
                if (v < bestd) {
                    bestd = v;
                    arg = static_cast<int>(c);
                }
            }
            if (labels[i] != arg) changed = true;
            labels[i] = arg;
            dist[i] = bestd;
            ++sizes[static_cast<std::size_t>(arg)];
        }
        return changed;
    }

    /// Moves the point farthest from its center into each empty cluster.
    bool repair_empty() {
        bool repaired = false;
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] != 0) continue;
            std::size_t far = n;
            double fd = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[static_cast<std::size_t>(labels[i])] > 1 && dist[i] > fd) {
                    fd = dist[i];
                    far = i;
                }
            }
            if (far == n) throw std::logic_error("kmeans: cannot repair empty cluster");
            --sizes[static_cast<std::size_t>(labels[far])];
            labels[far] = static_cast<int>(c);
            sizes[c] = 1;
            dist[far] = 0.0;
            std::copy_n(pt(far), d, center(c));
            repaired = true;
        }
        return repaired;
    }

    void update_centers() {
        std::fill(centers.begin(), centers.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double* c = center(static_cast<std::size_t>(labels[i]));
            const double* p = pt(i);
            for (std::size_t f = 0; f < d; ++f) c[f] += p[f];
        }
        for (std::size_t c = 0; c < k; ++c) {
            double inv = 1.0 / static_cast<double>(sizes[c]);
            double* cc = center(c);
            for (std::size_t f = 0; f < d; ++f) cc[f] *= inv;
        }
    }

    double partition_wss() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += sq_dist(pt(i), center(static_cast<std::size_t>(labels[i])), d);
        return s;
    }
};

void check_k(const Dataset& ds, std::size_t k) {
    if (k < 1 || k > ds.n_points())
        throw std::invalid_argument("kmeans: K=" + std::to_string(k) + " outside [1, N=" +
                                    std::to_string(ds.n_points()) + "]");
}

}  // namespace

LloydTrace lloyd_run(const Dataset& ds, std::size_t k, std::uint64_t seed, const KMeansOptions& opts) {
    check_k(ds, k);
    Rng rng(seed);
    Workspace ws(ds, k);
    ws.seed_centers(rng);

    LloydTrace trace;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < std::max<std::size_t>(opts.max_iterations, 1); ++it) {
        bool changed = ws.assign();
        changed = ws.repair_empty() || changed;
        ws.update_centers();
        double w = ws.partition_wss();
        trace.wss_history.push_back(w);
        if (!changed) break;
        if (std::isfinite(prev) && (prev - w) <= opts.tolerance * prev) break;
        prev = w;
    }
    trace.labels = ws.labels;
    trace.wss = trace.wss_history.back();
    return trace;
}

Partition kmeans(const Dataset& ds, std::size_t k, std::uint64_t seed, const KMeansOptions& opts) {
    check_k(ds, k);
    LloydTrace best;
    best.wss = std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
    for (std::size_t r = 0; r < restarts; ++r) {
        auto run = lloyd_run(ds, k, derive_seed(seed, {k, r}), opts);
        if (run.wss < best.wss) best = std::move(run);
    }
    return Partition(ds, std::move(best.labels), k);
}

std::vector<Partition> kmeans_sweep(const Dataset& ds, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                                    const KMeansOptions& opts) {
    if (k_min < 1 || k_min > k_max) throw std::invalid_argument("kmeans_sweep: invalid K range");
    std::vector<Partition> out;
    out.reserve(k_max - k_min + 1);
    for (std::size_t k = k_min; k <= k_max; ++k) out.push_back(kmeans(ds, k, seed, opts));
    return out;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: length mismatch");
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    auto c2 = [](double x) { return x * (x - 1.0) / 2.0; };
    double index = 0.0, sa = 0.0, sb = 0.0;
    for (const auto& [key, v] : table) index += c2(v);
    for (const auto& [key, v] : rows) sa += c2(v);
    for (const auto& [key, v] : cols) sb += c2(v);
    double expected = sa * sb / c2(static_cast<double>(a.size()));
    double max_index = 0.5 * (sa + sb);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace cvi
