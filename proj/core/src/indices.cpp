#include "cvi/indices.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <stdexcept>

namespace cvi {

namespace {

using enum IndexId;
using enum OptimumType;
using enum IndexClass;

constexpr std::array<IndexInfo, kIndexCount> kRegistry{{
    {BakerHubertGamma, "baker-hubert-gamma", "Baker-Hubert Gamma", Max, W},
    {BallHall, "ball-hall", "Ball-Hall", Elbow, W},
    {BanfieldRaftery, "banfield-raftery", "Banfield-Raftery", Elbow, W},
    {Bic, "bic", "BIC", Elbow, W},
    {CIndex, "c-index", "C Index", Min, WD},
    {CalinskiHarabasz, "calinski-harabasz", "Calinski-Harabasz", Max, WB},
    {DaviesBouldin, "davies-bouldin", "Davies-Bouldin", Min, WB},
    {Dunn, "dunn", "Dunn", Max, WB},
    {GPlus, "g-plus", "G+", Min, WD},
    {Isolation, "isolation", "Isolation Index", Knee, WB},
    {KrzanowskiLai, "krzanowski-lai", "Krzanowski-Lai", Max, W},
    {Hartigan, "hartigan", "Hartigan", Knee, WB},
    {McClainRao, "mcclain-rao", "McClain-Rao", Elbow, WB},
    {Pbm, "pbm", "PBM", Max, WBD},
    {PointBiserial, "point-biserial", "Point-Biserial", Max, WB},
    {Rmsstd, "rmsstd", "RMSSTD", Elbow, W},
    {Rs, "rs", "RS", Knee, WD},
    {RayTuri, "ray-turi", "Ray-Turi", Elbow, WB},
    {SDbw, "s-dbw", "S_Dbw", Elbow, WB},
    {Silhouette, "silhouette", "Silhouette", Max, WB},
    {Tau, "tau", "Tau", Max, WD},
    {TraceW, "trace-w", "Trace W", Elbow, W},
    {WemmertGancarski, "wemmert-gancarski", "Wemmert-Gancarski", Max, WB},
    {XieBeni, "xie-beni", "Xie-Beni", Elbow, WB},
}};

struct Undefined {
    std::string reason;
};

void require_between(const Partition& part) {
    if (part.n_clusters() < 2) throw Undefined{"needs at least two clusters"};
}

double checked_ratio(double num, double den, const char* what) {
    if (den == 0.0) throw Undefined{what};
    return num / den;
}

/// Building blocks for one partition, computed on first use.
class PartitionStats {
public:
    PartitionStats(const Evaluator& ev, const Partition& part) : ev_(ev), part_(part) {}

    const Partition& part() const { return part_; }

    const std::vector<double>& wss() {
        if (!wss_) wss_ = cluster_wss(ev_.dataset(), part_, ev_.metric());
        return *wss_;
    }

    double wss_total() {
        double s = 0.0;
        for (double w : wss()) s += w;
        return s;
    }

    const std::vector<double>& data_center() {
        if (!center_) center_ = ev_.dataset().barycenter();
        return *center_;
    }

    double bss() {
        if (!bss_) {
            double s = 0.0;
            for (std::size_t k = 0; k < part_.n_clusters(); ++k)
                s += static_cast<double>(part_.cluster_size(k)) *
                     squared_distance(part_.barycenter(k), data_center(), ev_.metric());
            bss_ = s;
        }
        return *bss_;
    }

    const PairCounts& pairs() {
        if (!pairs_) pairs_ = ev_.sorted_pairs().counts(part_);
        return *pairs_;
    }

    /// distance(x_i, barycenter of its own cluster)
    const std::vector<double>& own_center_distance() {
        if (!own_dist_) {
            const auto& ds = ev_.dataset();
            std::vector<double> d(ds.n_points());
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] = distance(ds.point(i), part_.barycenter(static_cast<std::size_t>(part_.label(i))),
                                ev_.metric());
            own_dist_ = std::move(d);
        }
        return *own_dist_;
    }

    double center_distance(std::size_t a, std::size_t b) {
        return distance(part_.barycenter(a), part_.barycenter(b), ev_.metric());
    }

    /// Smallest between-cluster point distance (single linkage) and largest
    /// within-cluster point distance (diameter).
    std::pair<double, double> linkage() {
        if (!linkage_) {
            const auto& dm = ev_.distances();
            const auto& lab = part_.labels();
            double min_between = std::numeric_limits<double>::infinity();
            double max_within = 0.0;
            for (std::size_t i = 0; i < dm.size(); ++i) {
                auto row = dm.row(i);
                for (std::size_t j = i + 1; j < dm.size(); ++j) {
                    if (lab[i] == lab[j])
                        max_within = std::max(max_within, row[j]);
                    else
                        min_between = std::min(min_between, row[j]);
                }
            }
            linkage_ = {min_between, max_within};
        }
        return *linkage_;
    }

private:
    const Evaluator& ev_;
    const Partition& part_;
    std::optional<std::vector<double>> wss_;
    std::optional<std::vector<double>> center_;
    std::optional<double> bss_;
    std::optional<PairCounts> pairs_;
    std::optional<std::vector<double>> own_dist_;
    std::optional<std::pair<double, double>> linkage_;
};

double ball_hall(PartitionStats& st) {
    const auto& part = st.part();
    double s = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k)
        s += st.wss()[k] / static_cast<double>(part.cluster_size(k));
    return s / static_cast<double>(part.n_clusters());
}

double banfield_raftery(PartitionStats& st) {
    const auto& part = st.part();
    double s = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k) {
        double nk = static_cast<double>(part.cluster_size(k));
        double mean = st.wss()[k] / nk;
        if (mean <= 0.0) throw Undefined{"cluster with zero dispersion"};
        s += nk * std::log(mean);
    }
    return s;
}

double bic(PartitionStats& st, std::size_t dim) {
    const auto& part = st.part();
    const double n = static_cast<double>(part.n_points());
    const double k_count = static_cast<double>(part.n_clusters());
    const double d = static_cast<double>(dim);
    if (part.n_points() == part.n_clusters()) throw Undefined{"N equals K"};
    double mean_wss_sum = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k)
        mean_wss_sum += st.wss()[k] / static_cast<double>(part.cluster_size(k));
    if (mean_wss_sum <= 0.0) throw Undefined{"zero within-cluster dispersion"};
    double s = k_count * (d + 1.0) * std::log(n) / 2.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k) {
        double nk = static_cast<double>(part.cluster_size(k));
        s += nk * std::log(nk / n) - (nk - 1.0) * d / 2.0 -
             nk * d / 2.0 * std::log(2.0 * std::numbers::pi * nk * d / (n - k_count) * mean_wss_sum);
    }
    return s;
}

double c_index(PartitionStats& st) {
    const auto& pc = st.pairs();
    if (pc.n_within == 0) throw Undefined{"no within-cluster pairs"};
    return checked_ratio(pc.sum_within - pc.sum_min, pc.sum_max - pc.sum_min, "S_max equals S_min");
}

double calinski_harabasz(PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    double n = static_cast<double>(part.n_points());
    double k = static_cast<double>(part.n_clusters());
    return (n - k) / (k - 1.0) * checked_ratio(st.bss(), st.wss_total(), "zero pooled WSS");
}

double davies_bouldin(PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    const std::size_t kc = part.n_clusters();
    const auto& own = st.own_center_distance();
    std::vector<double> spread(kc, 0.0);
    for (std::size_t i = 0; i < own.size(); ++i) spread[static_cast<std::size_t>(part.label(i))] += own[i];
    for (std::size_t k = 0; k < kc; ++k) spread[k] /= static_cast<double>(part.cluster_size(k));
    double s = 0.0;
    for (std::size_t k = 0; k < kc; ++k) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < kc; ++l) {
            if (l == k) continue;
            worst = std::max(worst, checked_ratio(spread[k] + spread[l], st.center_distance(k, l),
                                                  "coincident barycenters"));
        }
        s += worst;
    }
    return s / static_cast<double>(kc);
}

double dunn(PartitionStats& st) {
    require_between(st.part());
    auto [min_between, max_within] = st.linkage();
    return checked_ratio(min_between, max_within, "zero cluster diameter");
}

double g_plus(PartitionStats& st) {
    const auto& pc = st.pairs();
    double nt = static_cast<double>(pc.n_total);
    return checked_ratio(2.0 * static_cast<double>(pc.s_minus), nt * (nt - 1.0), "fewer than two pairs");
}

double isolation(const Evaluator& ev, PartitionStats& st) {
    const auto& part = st.part();
    const std::size_t p = ev.options().isolation_neighbors;
    if (p == 0 || p >= part.n_points()) throw Undefined{"neighborhood size must be in [1, N)"};
    const auto& nn = ev.neighbor_lists();
    double s = 0.0;
    for (std::size_t i = 0; i < part.n_points(); ++i) {
        std::size_t foreign = 0;
        for (auto j : nn[i])
            if (part.label(j) != part.label(i)) ++foreign;
        s += 1.0 - static_cast<double>(foreign) / static_cast<double>(p);
    }
    return s / static_cast<double>(part.n_points());
}

double hartigan(PartitionStats& st) {
    double b = st.bss();
    double w = st.wss_total();
    if (b <= 0.0) throw Undefined{"zero between-cluster dispersion"};
    if (w <= 0.0) throw Undefined{"zero pooled WSS"};
    return std::log(b / w);
}

double mcclain_rao(PartitionStats& st) {
    const auto& pc = st.pairs();
    if (pc.n_within == 0) throw Undefined{"no within-cluster pairs"};
    if (pc.n_between == 0) throw Undefined{"no between-cluster pairs"};
    return static_cast<double>(pc.n_between) / static_cast<double>(pc.n_within) *
           checked_ratio(pc.sum_within, pc.sum_between, "zero between-cluster distance sum");
}

double pbm(const Evaluator& ev, PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    const auto& ds = ev.dataset();
    double e_t = 0.0;
    for (std::size_t i = 0; i < ds.n_points(); ++i) e_t += distance(ds.point(i), st.data_center(), ev.metric());
    double e_w = 0.0;
    for (double d : st.own_center_distance()) e_w += d;
    double d_b = 0.0;
    for (std::size_t k = 0; k < part.n_clusters(); ++k)
        for (std::size_t l = k + 1; l < part.n_clusters(); ++l) d_b = std::max(d_b, st.center_distance(k, l));
    double r = checked_ratio(e_t * d_b, static_cast<double>(part.n_clusters()) * e_w, "zero E_W");
    return r * r;
}

double point_biserial(PartitionStats& st) {
    const auto& pc = st.pairs();
    if (pc.n_within == 0) throw Undefined{"no within-cluster pairs"};
    if (pc.n_between == 0) throw Undefined{"no between-cluster pairs"};
    double nw = static_cast<double>(pc.n_within);
    double nb = static_cast<double>(pc.n_between);
    return (pc.sum_between / nb - pc.sum_within / nw) * std::sqrt(nw * nb) / static_cast<double>(pc.n_total);
}

double rmsstd(PartitionStats& st, std::size_t dim) {
    const auto& part = st.part();
    double dof = static_cast<double>(part.n_points() - part.n_clusters());
    return std::sqrt(checked_ratio(st.wss_total(), static_cast<double>(dim) * dof, "N equals K"));
}

double rs(const Evaluator& ev, PartitionStats& st) {
    return 1.0 - checked_ratio(st.wss_total(), ev.total_sum_of_squares(), "zero total sum of squares");
}

double ray_turi(PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < part.n_clusters(); ++k)
        for (std::size_t l = k + 1; l < part.n_clusters(); ++l) {
            double d = st.center_distance(k, l);
            min_sq = std::min(min_sq, d * d);
        }
    return checked_ratio(st.wss_total(), static_cast<double>(part.n_points()) * min_sq, "coincident barycenters");
}

std::vector<double> variance_vector(const Dataset& ds, std::span<const std::size_t> rows) {
    const std::size_t d = ds.dim();
    std::vector<double> mean(d, 0.0), var(d, 0.0);
    for (std::size_t i : rows) {
        auto p = ds.point(i);
        for (std::size_t f = 0; f < d; ++f) mean[f] += p[f];
    }
    for (double& m : mean) m /= static_cast<double>(rows.size());
    for (std::size_t i : rows) {
        auto p = ds.point(i);
        for (std::size_t f = 0; f < d; ++f) {
            double t = p[f] - mean[f];
            var[f] += t * t;
        }
    }
    for (double& v : var) v /= static_cast<double>(rows.size());
    return var;
}

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double s_dbw(const Evaluator& ev, PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    const auto& ds = ev.dataset();
    const std::size_t kc = part.n_clusters();
    const std::size_t d = ds.dim();

    std::vector<std::size_t> all(ds.n_points());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    double total_norm = euclidean_norm(variance_vector(ds, all));
    if (total_norm == 0.0) throw Undefined{"zero data variance"};

    double norm_sum = 0.0;
    for (std::size_t k = 0; k < kc; ++k) norm_sum += euclidean_norm(variance_vector(ds, part.members(k)));
    const double scatter = norm_sum / (static_cast<double>(kc) * total_norm);
    const double sigma = std::sqrt(norm_sum) / static_cast<double>(kc);
    const double sigma_sq = sigma * sigma;

    auto density = [&](std::span<const double> probe, std::size_t k, std::size_t l) {
        std::size_t count = 0;
        for (std::size_t c : {k, l})
            for (std::size_t i : part.members(c)) {
                auto p = ds.point(i);
                double s = 0.0;
                for (std::size_t f = 0; f < d; ++f) {
                    double t = p[f] - probe[f];
                    s += t * t;
                }
                if (s <= sigma_sq) ++count;
            }
        return static_cast<double>(count);
    };

    std::vector<double> mid(d);
    double r_sum = 0.0;
    for (std::size_t k = 0; k < kc; ++k)
        for (std::size_t l = k + 1; l < kc; ++l) {
            auto ck = part.barycenter(k);
            auto cl = part.barycenter(l);
            for (std::size_t f = 0; f < d; ++f) mid[f] = 0.5 * (ck[f] + cl[f]);
            double denom = std::max(density(ck, k, l), density(cl, k, l));
            if (denom > 0.0) r_sum += density(mid, k, l) / denom;
        }
    return scatter + 2.0 / (static_cast<double>(kc) * static_cast<double>(kc - 1)) * r_sum;
}

double silhouette(const Evaluator& ev, PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    const auto& dm = ev.distances();
    const std::size_t kc = part.n_clusters();
    std::vector<double> cluster_sum(kc, 0.0);
    std::vector<double> per_cluster(kc, 0.0);
    for (std::size_t i = 0; i < part.n_points(); ++i) {
        std::fill(cluster_sum.begin(), cluster_sum.end(), 0.0);
        auto row = dm.row(i);
        for (std::size_t j = 0; j < part.n_points(); ++j)
            cluster_sum[static_cast<std::size_t>(part.label(j))] += row[j];
        const auto own = static_cast<std::size_t>(part.label(i));
        const std::size_t n_own = part.cluster_size(own);
        double s = 0.0;
        if (n_own > 1) {
            double a = cluster_sum[own] / static_cast<double>(n_own - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t l = 0; l < kc; ++l)
                if (l != own) b = std::min(b, cluster_sum[l] / static_cast<double>(part.cluster_size(l)));
            double m = std::max(a, b);
            s = m > 0.0 ? (b - a) / m : 0.0;
        }
        per_cluster[own] += s;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < kc; ++k) total += per_cluster[k] / static_cast<double>(part.cluster_size(k));
    return total / static_cast<double>(kc);
}

double tau(PartitionStats& st) {
    const auto& pc = st.pairs();
    double nt = static_cast<double>(pc.n_total);
    double den = std::sqrt(static_cast<double>(pc.n_between) * static_cast<double>(pc.n_within) *
                           (nt * (nt - 1.0) / 2.0));
    return checked_ratio(static_cast<double>(pc.s_plus) - static_cast<double>(pc.s_minus), den,
                         "no within or between pairs");
}

double gamma(PartitionStats& st) {
    const auto& pc = st.pairs();
    double sp = static_cast<double>(pc.s_plus);
    double sm = static_cast<double>(pc.s_minus);
    return checked_ratio(sp - sm, sp + sm, "no strict pair comparisons");
}

double wemmert_gancarski(const Evaluator& ev, PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    const auto& ds = ev.dataset();
    const std::size_t kc = part.n_clusters();
    const auto& own = st.own_center_distance();
    std::vector<double> r_sum(kc, 0.0);
    for (std::size_t i = 0; i < ds.n_points(); ++i) {
        const auto k = static_cast<std::size_t>(part.label(i));
        double nearest_other = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < kc; ++l)
            if (l != k) nearest_other = std::min(nearest_other, distance(ds.point(i), part.barycenter(l), ev.metric()));
        r_sum[k] += checked_ratio(own[i], nearest_other, "point on a foreign barycenter");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < kc; ++k) {
        double nk = static_cast<double>(part.cluster_size(k));
        s += nk * std::max(0.0, 1.0 - r_sum[k] / nk);
    }
    return s / static_cast<double>(ds.n_points());
}

double xie_beni(PartitionStats& st) {
    const auto& part = st.part();
    require_between(part);
    double min_between = st.linkage().first;
    return checked_ratio(st.wss_total(), static_cast<double>(part.n_points()) * min_between * min_between,
                         "zero single-linkage distance");
}

double compute(IndexId id, const Evaluator& ev, PartitionStats& st) {
    const std::size_t dim = ev.dataset().dim();
    switch (id) {
        case BakerHubertGamma: return gamma(st);
        case BallHall: return ball_hall(st);
        case BanfieldRaftery: return banfield_raftery(st);
        case Bic: return bic(st, dim);
        case CIndex: return c_index(st);
        case CalinskiHarabasz: return calinski_harabasz(st);
        case DaviesBouldin: return davies_bouldin(st);
        case Dunn: return dunn(st);
        case GPlus: return g_plus(st);
        case Isolation: return isolation(ev, st);
        case KrzanowskiLai: throw Undefined{"needs partitions at K-1 and K+1"};
        case Hartigan: return hartigan(st);
        case McClainRao: return mcclain_rao(st);
        case Pbm: return pbm(ev, st);
        case PointBiserial: return point_biserial(st);
        case Rmsstd: return rmsstd(st, dim);
        case Rs: return rs(ev, st);
        case RayTuri: return ray_turi(st);
        case SDbw: return s_dbw(ev, st);
        case Silhouette: return silhouette(ev, st);
        case Tau: return tau(st);
        case TraceW: return st.wss_total();
        case WemmertGancarski: return wemmert_gancarski(ev, st);
        case XieBeni: return xie_beni(st);
    }
    throw std::invalid_argument("unknown index id");
}

IndexValue make_value(IndexId id, std::size_t k, double v) {
    IndexValue out{id, k, v, {}};
    if (!std::isfinite(v)) {
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.undefined_reason = "non-finite value";
    }
    return out;
}

IndexValue make_undefined(IndexId id, std::size_t k, std::string reason) {
    return IndexValue{id, k, std::numeric_limits<double>::quiet_NaN(), std::move(reason)};
}

IndexValue evaluate_one(IndexId id, const Evaluator& ev, PartitionStats& st) {
    const std::size_t k = st.part().n_clusters();
    try {
        return make_value(id, k, compute(id, ev, st));
    } catch (const Undefined& u) {
        return make_undefined(id, k, u.reason);
    } catch (const std::domain_error& e) {
        return make_undefined(id, k, e.what());
    }
}

void check_contiguous(std::span<const Partition> parts, const Dataset& ds) {
    for (std::size_t t = 0; t < parts.size(); ++t) {
        if (parts[t].n_points() != ds.n_points())
            throw std::invalid_argument("evaluate_curve: partition does not match dataset");
        if (t > 0 && parts[t].n_clusters() != parts[t - 1].n_clusters() + 1)
            throw std::invalid_argument("evaluate_curve: partitions must cover a contiguous K range");
    }
}

}  // namespace

std::span<const IndexInfo> index_registry() { return kRegistry; }

const IndexInfo& index_info(IndexId id) { return kRegistry[static_cast<std::size_t>(id)]; }

IndexSpec index_spec(IndexId id) {
    const auto& info = index_info(id);
    return {info.id, info.optimum, info.index_class};
}

std::vector<IndexSpec> all_index_specs() {
    std::vector<IndexSpec> out;
    for (const auto& info : kRegistry) out.push_back({info.id, info.optimum, info.index_class});
    return out;
}

std::optional<IndexId> find_index(std::string_view key) {
    for (const auto& info : kRegistry)
        if (info.key == key) return info.id;
    return std::nullopt;
}

Evaluator::Evaluator(const Dataset& ds, MetricSpec metric, EvaluatorOptions opts)
    : ds_(ds), metric_(metric), opts_(opts) {}

Evaluator::~Evaluator() = default;

const DistanceMatrix& Evaluator::distances() const {
    std::call_once(dm_once_, [this] { dm_ = pairwise_matrix(ds_, metric_); });
    return dm_;
}

const SortedPairs& Evaluator::sorted_pairs() const {
    std::call_once(pairs_once_, [this] { pairs_ = std::make_unique<SortedPairs>(distances()); });
    return *pairs_;
}

const std::vector<std::vector<std::uint32_t>>& Evaluator::neighbor_lists() const {
    std::call_once(nn_once_, [this] {
        const auto& dm = distances();
        const std::size_t n = dm.size();
        const std::size_t p = std::min(opts_.isolation_neighbors, n - 1);
        nn_.assign(n, {});
        std::vector<std::uint32_t> order;
        for (std::size_t i = 0; i < n; ++i) {
            order.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) order.push_back(static_cast<std::uint32_t>(j));
            auto row = dm.row(i);
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p), order.end(),
                              [&](std::uint32_t a, std::uint32_t b) {
                                  if (row[a] != row[b]) return row[a] < row[b];
                                  return a < b;
                              });
            nn_[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p));
        }
    });
    return nn_;
}

double Evaluator::total_sum_of_squares() const {
    std::call_once(tss_once_, [this] { tss_ = tss(ds_, metric_); });
    return tss_;
}

IndexValue Evaluator::evaluate(IndexId id, const Partition& part) const {
    if (part.n_points() != ds_.n_points()) throw std::invalid_argument("evaluate: partition does not match dataset");
    PartitionStats st(*this, part);
    return evaluate_one(id, *this, st);
}

std::vector<IndexValue> Evaluator::evaluate_curve(IndexId id, std::span<const Partition> parts) const {
    const IndexId ids[] = {id};
    return std::move(evaluate_curves(ids, parts).front());
}

std::vector<std::vector<IndexValue>> Evaluator::evaluate_curves(std::span<const IndexId> ids,
                                                                std::span<const Partition> parts) const {
    check_contiguous(parts, ds_);
    std::vector<std::vector<IndexValue>> out(ids.size());
    for (auto& c : out) c.reserve(parts.size());

    std::vector<double> pooled(parts.size());
    for (std::size_t t = 0; t < parts.size(); ++t) {
        PartitionStats st(*this, parts[t]);
        for (std::size_t q = 0; q < ids.size(); ++q) {
            if (ids[q] == KrzanowskiLai) {
                out[q].push_back(make_undefined(KrzanowskiLai, parts[t].n_clusters(), "pending"));
                continue;
            }
            out[q].push_back(evaluate_one(ids[q], *this, st));
        }
        try {
            pooled[t] = st.wss_total();
        } catch (const std::domain_error&) {
            pooled[t] = std::numeric_limits<double>::quiet_NaN();
        }
    }

    for (std::size_t q = 0; q < ids.size(); ++q) {
        if (ids[q] != KrzanowskiLai) continue;
        const double d = static_cast<double>(ds_.dim());
        for (std::size_t t = 0; t < parts.size(); ++t) {
            const std::size_t k = parts[t].n_clusters();
            auto& slot = out[q][t];
            double w_prev;
            if (t > 0) {
                w_prev = pooled[t - 1];
            } else if (k == 2) {
                w_prev = total_sum_of_squares();  // the K = 1 partition
            } else {
                slot = make_undefined(KrzanowskiLai, k, "no partition at K-1");
                continue;
            }
            if (t + 1 >= parts.size()) {
                slot = make_undefined(KrzanowskiLai, k, "no partition at K+1");
                continue;
            }
            if (k < 2) {
                slot = make_undefined(KrzanowskiLai, k, "needs at least two clusters");
                continue;
            }
            const double kd = static_cast<double>(k);
            double diff_k = std::pow(kd - 1.0, 2.0 / d) * w_prev - std::pow(kd, 2.0 / d) * pooled[t];
            double diff_next = std::pow(kd, 2.0 / d) * pooled[t] - std::pow(kd + 1.0, 2.0 / d) * pooled[t + 1];
            if (diff_next == 0.0) {
                slot = make_undefined(KrzanowskiLai, k, "diff at K+1 is zero");
                continue;
            }
            slot = make_value(KrzanowskiLai, k, std::abs(diff_k) / std::abs(diff_next));
        }
    }
    return out;
}

IndexValue evaluate(const IndexSpec& spec, const Dataset& ds, const Partition& part, const MetricSpec& m) {
    Evaluator ev(ds, m);
    return ev.evaluate(spec.id, part);
}

std::vector<IndexValue> evaluate_curve(const IndexSpec& spec, const Dataset& ds, std::span<const Partition> parts,
                                       const MetricSpec& m) {
    Evaluator ev(ds, m);
    return ev.evaluate_curve(spec.id, parts);
}

}  // namespace cvi
