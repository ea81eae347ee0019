#include "cvi/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cvi/csv.hpp"
#include "cvi/rng.hpp"

namespace cvi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool maximized(OptimumType t) { return t != OptimumType::Min; }

}  // namespace

double Curve::at(std::size_t k) const noexcept {
    if (!contains(k)) return kNaN;
    return values[k - k_min];
}

Curve Curve::from(std::span<const IndexValue> values) {
    Curve c;
    if (values.empty()) return c;
    c.k_min = values.front().n_clusters;
    for (const auto& v : values) c.values.push_back(v.defined() ? v.value : kNaN);
    return c;
}

Curve difference_transform(const Curve& curve) {
    if (curve.values.size() < 3) throw std::invalid_argument("difference_transform: need at least 3 points");
    Curve out;
    out.k_min = curve.k_min + 1;
    for (std::size_t t = 1; t + 1 < curve.values.size(); ++t) {
        double prev = curve.values[t - 1], cur = curve.values[t], next = curve.values[t + 1];
        double den = cur - next;
        if (std::isnan(prev) || std::isnan(cur) || std::isnan(next) || den == 0.0) {
            out.values.push_back(kNaN);
            continue;
        }
        double v = std::abs((prev - cur) / den);
        out.values.push_back(std::isfinite(v) ? v : kNaN);
    }
    return out;
}

Curve selection_curve(OptimumType optimum, const Curve& curve) {
    if (optimum == OptimumType::Knee || optimum == OptimumType::Elbow) return difference_transform(curve);
    return curve;
}

std::optional<std::size_t> select_k(const IndexSpec& spec, const Curve& curve) {
    if (curve.values.empty()) return std::nullopt;
    Curve c = (spec.optimum == OptimumType::Knee || spec.optimum == OptimumType::Elbow) && curve.values.size() < 3
                  ? Curve{}
                  : selection_curve(spec.optimum, curve);
    const bool maximize = maximized(spec.optimum);
    std::optional<std::size_t> best;
    double best_v = 0.0;
    for (std::size_t t = 0; t < c.values.size(); ++t) {
        double v = c.values[t];
        if (std::isnan(v)) continue;
        if (!best || (maximize ? v > best_v : v < best_v)) {
            best = c.k_min + t;
            best_v = v;
        }
    }
    return best;
}

double sensitivity(const IndexSpec& spec, const Curve& curve, std::size_t k_star) {
    if (k_star < 1) return kNaN;
    const bool transformed = spec.optimum == OptimumType::Knee || spec.optimum == OptimumType::Elbow;
    if (transformed && curve.values.size() < 3) return kNaN;
    Curve c = selection_curve(spec.optimum, curve);
    double lo = c.at(k_star - 1), mid = c.at(k_star), hi = c.at(k_star + 1);
    if (std::isnan(lo) || std::isnan(mid) || std::isnan(hi)) return kNaN;
    double competitor = maximized(spec.optimum) ? std::max(lo, hi) : std::min(lo, hi);
    return std::abs(mid - competitor);
}

double step_sensitivity(const Curve& curve, std::size_t k_star) {
    if (k_star < 1) return kNaN;
    double prev = curve.at(k_star - 1), cur = curve.at(k_star);
    if (std::isnan(prev) || std::isnan(cur)) return kNaN;
    return std::abs(cur - prev);
}

std::array<std::uint64_t, 3> s_minus_probe(const Dataset& ds, std::span<const Partition, 3> parts) {
    SortedPairs pairs(pairwise_matrix(ds, MetricSpec::euclidean()));
    return {pairs.counts(parts[0]).s_minus, pairs.counts(parts[1]).s_minus, pairs.counts(parts[2]).s_minus};
}

ExperimentConfig ExperimentConfig::full_protocol(SchemeConfig scheme) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.dims = {5, 7, 10, 20, 35, 70, 100, 135, 180, 250, 350};
    cfg.realizations = 100;
    cfg.set_default_k_range();
    return cfg;
}

void ExperimentConfig::set_default_k_range() {
    k_min = 2;
    k_max = scheme.k_star + 3;
}

std::vector<IndexId> ExperimentConfig::effective_indices() const {
    if (!indices.empty()) return indices;
    std::vector<IndexId> all;
    for (const auto& info : index_registry()) all.push_back(info.id);
    return all;
}

void ExperimentConfig::validate() const {
    SchemeConfig probe = scheme;
    if (!dims.empty()) probe.dim = dims.front();
    probe.validate();
    if (dims.empty()) throw std::invalid_argument("config: dims must not be empty");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw std::invalid_argument("config: dims must be positive");
        if (i > 0 && dims[i] <= dims[i - 1]) throw std::invalid_argument("config: dims must be strictly increasing");
    }
    if (realizations < 1) throw std::invalid_argument("config: realizations must be at least 1");
    if (k_min < 1 || k_min > k_max) throw std::invalid_argument("config: invalid K range");
    const std::size_t ks = scheme.k_star;
    if (k_min > ks - 1 || k_max < ks + 1)
        throw std::invalid_argument("config: K range must contain k*-1, k* and k*+1");
    if (metrics.empty()) throw std::invalid_argument("config: no metrics");
    for (const auto& m : metrics)
        if (m.kind == MetricKind::Minkowski && !(m.p > 0.0))
            throw std::invalid_argument("config: Minkowski exponent must be positive");
    std::vector<IndexId> ids = effective_indices();
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument("config: duplicate index");
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::size_t dim, std::size_t realization) {
    return derive_seed(master_seed, {dim, realization});
}

const SweepCell& SweepResult::cell(IndexId index, std::size_t metric, std::size_t dim) const {
    for (const auto& c : cells)
        if (c.index == index && c.metric == metric && c.dim == dim) return c;
    throw std::out_of_range("SweepResult::cell: no such cell");
}

std::vector<const RealizationRecord*> SweepResult::records_for(IndexId index, std::size_t metric,
                                                              std::size_t dim) const {
    std::vector<const RealizationRecord*> out;
    for (const auto& r : records)
        if (r.index == index && r.metric == metric && r.dim == dim) out.push_back(&r);
    return out;
}

std::vector<SweepCell> aggregate(const ExperimentConfig& cfg, std::span<const RealizationRecord> records) {
    using Key = std::tuple<IndexId, std::size_t, std::size_t>;
    std::map<Key, std::vector<const RealizationRecord*>> groups;
    for (const auto& r : records) groups[{r.index, r.metric, r.dim}].push_back(&r);

    std::vector<SweepCell> cells;
    const auto ids = cfg.effective_indices();
    for (IndexId id : ids) {
        for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
            double baseline = kNaN;
            for (std::size_t di = 0; di < cfg.dims.size(); ++di) {
                SweepCell cell{id, m, cfg.dims[di], kNaN, kNaN, 0.0, 0};
                auto it = groups.find({id, m, cfg.dims[di]});
                if (it != groups.end()) {
                    auto group = it->second;
                    std::sort(group.begin(), group.end(),
                              [](auto* a, auto* b) { return a->realization < b->realization; });
                    double sum = 0.0;
                    std::size_t correct = 0;
                    for (const auto* r : group) {
                        if (!std::isnan(r->sensitivity)) {
                            sum += r->sensitivity;
                            ++cell.n_defined;
                        }
                        if (r->selected_k && *r->selected_k == cfg.scheme.k_star) ++correct;
                    }
                    if (cell.n_defined > 0) cell.mean_sensitivity = sum / static_cast<double>(cell.n_defined);
                    cell.accuracy = static_cast<double>(correct) / static_cast<double>(cfg.realizations);
                }
                if (di == 0) baseline = cell.mean_sensitivity;
                if (!std::isnan(baseline) && baseline > 0.0 && !std::isnan(cell.mean_sensitivity))
                    cell.relative_sensitivity = cell.mean_sensitivity / baseline;
                cells.push_back(cell);
            }
        }
    }
    return cells;
}

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CVI_BENCH_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct UnitOutput {
    RealizationInfo info;
    std::vector<RealizationRecord> records;
};

std::vector<int> non_noise(std::span<const int> labels, std::span<const int> truth, std::vector<int>& truth_out) {
    std::vector<int> out;
    truth_out.clear();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (truth[i] == kNoiseLabel) continue;
        out.push_back(labels[i]);
        truth_out.push_back(truth[i]);
    }
    return out;
}

UnitOutput run_unit(const ExperimentConfig& cfg, const std::vector<IndexId>& ids, std::size_t dim,
                    std::size_t realization) {
    UnitOutput out;
    out.info.dim = dim;
    out.info.realization = realization;
    out.info.seed = realization_seed(cfg.master_seed, dim, realization);
    const std::size_t k_star = cfg.scheme.k_star;

    auto blank_records = [&] {
        out.records.clear();
        for (std::size_t m = 0; m < cfg.metrics.size(); ++m)
            for (IndexId id : ids) out.records.push_back({id, m, dim, realization, Curve{}, std::nullopt, kNaN});
    };

    try {
        SchemeConfig sc = cfg.scheme;
        sc.dim = dim;
        Dataset ds = generate(sc, derive_seed(out.info.seed, {0}));
        out.info.n_points = ds.n_points();
        auto parts = kmeans_sweep(ds, cfg.k_min, cfg.k_max, derive_seed(out.info.seed, {1}), cfg.kmeans);

        const Partition& at_star = parts[k_star - cfg.k_min];
        std::vector<int> truth_kept;
        auto kept = non_noise(at_star.labels(), *ds.truth_labels(), truth_kept);
        out.info.ari_at_k_star = adjusted_rand_index(kept, truth_kept);

        for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
            Evaluator ev(ds, cfg.metrics[m], cfg.evaluator);
            auto curves = ev.evaluate_curves(ids, parts);
            if (cfg.metrics[m] == MetricSpec::euclidean() && !out.info.s_minus) {
                const auto& sp = ev.sorted_pairs();
                out.info.s_minus = std::array<std::uint64_t, 3>{
                    sp.counts(parts[k_star - 1 - cfg.k_min]).s_minus, sp.counts(at_star).s_minus,
                    sp.counts(parts[k_star + 1 - cfg.k_min]).s_minus};
            }
            for (std::size_t q = 0; q < ids.size(); ++q) {
                RealizationRecord rec{ids[q], m, dim, realization, Curve::from(curves[q]), std::nullopt, kNaN};
                const IndexSpec spec = index_spec(ids[q]);
                rec.selected_k = select_k(spec, rec.curve);
                rec.sensitivity = sensitivity(spec, rec.curve, k_star);
                out.records.push_back(std::move(rec));
            }
        }
    } catch (const std::exception& e) {
        out.info.error = e.what();
        blank_records();
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto ids = cfg.effective_indices();
    const std::size_t n_units = cfg.dims.size() * cfg.realizations;
    std::vector<UnitOutput> units(n_units);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t u = next.fetch_add(1);
            if (u >= n_units) return;
            units[u] = run_unit(cfg, ids, cfg.dims[u / cfg.realizations], u % cfg.realizations);
        }
    };
    const std::size_t n_threads = std::min(resolve_threads(cfg.threads), n_units);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    SweepResult result;
    result.config = cfg;
    for (auto& u : units) {
        result.realizations.push_back(std::move(u.info));
        for (auto& r : u.records) result.records.push_back(std::move(r));
    }
    result.cells = aggregate(cfg, result.records);
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    const auto& cfg = result.config;
    os << csv_row({"index", "metric", "scheme", "dim", "mean_sensitivity", "relative_sensitivity", "accuracy",
                   "n_defined"});
    for (const auto& c : result.cells) {
        os << csv_row({std::string(index_info(c.index).key), to_string(cfg.metrics[c.metric]),
                       std::string(to_string(cfg.scheme.scheme)), std::to_string(c.dim),
                       format_double(c.mean_sensitivity), format_double(c.relative_sensitivity),
                       format_double(c.accuracy), std::to_string(c.n_defined)});
    }
}

void write_raw_csv(std::ostream& os, const SweepResult& result) {
    const auto& cfg = result.config;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> seeds;
    for (const auto& info : result.realizations) seeds[{info.dim, info.realization}] = info.seed;
    os << csv_row({"index", "metric", "scheme", "dim", "realization", "seed", "selected_k", "sensitivity", "curve"});
    for (const auto& r : result.records) {
        std::string curve;
        for (std::size_t t = 0; t < r.curve.values.size(); ++t) {
            if (t) curve += ';';
            curve += format_double(r.curve.values[t]);
        }
        os << csv_row({std::string(index_info(r.index).key), to_string(cfg.metrics[r.metric]),
                       std::string(to_string(cfg.scheme.scheme)), std::to_string(r.dim),
                       std::to_string(r.realization), std::to_string(seeds[{r.dim, r.realization}]),
                       r.selected_k ? std::to_string(*r.selected_k) : std::string("nan"),
                       format_double(r.sensitivity), curve});
    }
}

void write_metadata(std::ostream& os, const SweepResult& result) {
    const auto& cfg = result.config;
    auto join_sizes = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    os << "version=" << kVersion << '\n';
    os << "scheme=" << to_string(cfg.scheme.scheme) << '\n';
    os << "k-star=" << cfg.scheme.k_star << '\n';
    os << "noise-fraction=" << format_double(cfg.scheme.noise_fraction) << '\n';
    os << "irrelevant-fraction=" << format_double(cfg.scheme.irrelevant_fraction) << '\n';
    os << "cluster-size-mean=" << format_double(cfg.scheme.cluster_size_mean) << '\n';
    os << "cluster-size-sd=" << format_double(cfg.scheme.cluster_size_sd) << '\n';
    os << "dims=" << join_sizes(cfg.dims) << '\n';
    os << "realizations=" << cfg.realizations << '\n';
    os << "k-range=" << cfg.k_min << '-' << cfg.k_max << '\n';
    os << "metric=";
    for (std::size_t i = 0; i < cfg.metrics.size(); ++i) os << (i ? "," : "") << to_string(cfg.metrics[i]);
    os << '\n';
    os << "indices=";
    auto ids = cfg.effective_indices();
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << index_info(ids[i]).key;
    os << '\n';
    os << "seed=" << cfg.master_seed << '\n';
    os << "kmeans-restarts=" << cfg.kmeans.restarts << '\n';
    os << "kmeans-tolerance=" << format_double(cfg.kmeans.tolerance) << '\n';
    os << "kmeans-max-iterations=" << cfg.kmeans.max_iterations << '\n';
    os << "isolation-neighbors=" << cfg.evaluator.isolation_neighbors << '\n';
    os << "seed-rule=realization seed = seed XOR hash(dim, realization); data stream tag 0, k-means stream tag 1\n";
    for (const auto& info : result.realizations) {
        os << "realization." << info.dim << '.' << info.realization << ".seed=" << info.seed << '\n';
        if (!info.error.empty()) os << "realization." << info.dim << '.' << info.realization << ".error=" << info.error << '\n';
    }
}

}  // namespace cvi
