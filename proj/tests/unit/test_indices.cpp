#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cvi/base_stats.hpp"
#include "cvi/indices.hpp"
#include "fixtures.hpp"

using cvi::Dataset;
using cvi::Evaluator;
using cvi::IndexId;
using cvi::MetricSpec;
using cvi::Partition;
using enum cvi::IndexId;

namespace {

constexpr std::size_t kMicroP = 3;

double value(IndexId id, const Dataset& ds, const Partition& p, MetricSpec m = MetricSpec::euclidean()) {
    Evaluator ev(ds, m, {.isolation_neighbors = kMicroP});
    return ev.evaluate(id, p).value;
}

std::vector<IndexId> all_ids() {
    std::vector<IndexId> ids;
    for (const auto& info : cvi::index_registry()) ids.push_back(info.id);
    return ids;
}

}  // namespace

TEST(Indices, MatchBruteForceOracles) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto metric = fixtures::metric_for(s);
        auto m = fixtures::random_micro(9000 + s, 12, 3, 3, false, fixtures::min_dim(metric));
        auto ds = m.dataset();
        Partition p(ds, m.labels);
        Evaluator ev(ds, metric, {.isolation_neighbors = kMicroP});
        for (auto id : all_ids()) {
            if (id == KrzanowskiLai) continue;
            auto got = ev.evaluate(id, p);
            double want = oracle::index_value(id, m.points, m.labels, metric, kMicroP);
            EXPECT_TRUE(fixtures::close(got.value, want))
                << cvi::index_info(id).key << " seed " << s << " metric " << cvi::to_string(metric) << ": " << got.value
                << " vs " << want << " (" << got.undefined_reason << ")";
            EXPECT_EQ(got.defined(), !std::isnan(want)) << cvi::index_info(id).key;
        }
    }
}

TEST(Indices, KrzanowskiLaiMatchesOracleOnCurves) {
    std::mt19937_64 gen(17);
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto metric = fixtures::metric_for(s);
        auto m = fixtures::random_micro(500 + s, 12, 3, 2, false, fixtures::min_dim(metric));
        auto ds = m.dataset();
        std::vector<Partition> parts;
        std::vector<oracle::Labels> labels;
        for (int k = 2; k <= 5; ++k) {
            labels.push_back(fixtures::random_labels(gen, ds.n_points(), k));
            parts.emplace_back(ds, labels.back());
        }
        Evaluator ev(ds, metric);
        auto curve = ev.evaluate_curve(KrzanowskiLai, parts);
        ASSERT_EQ(curve.size(), 4u);
        std::vector<double> w;
        for (const auto& l : labels) w.push_back(oracle::wss(m.points, l, metric));
        double w1 = oracle::tss(m.points, metric);
        EXPECT_TRUE(fixtures::close(curve[0].value, oracle::krzanowski_lai(w1, w[0], w[1], 2, ds.dim())));
        EXPECT_TRUE(fixtures::close(curve[1].value, oracle::krzanowski_lai(w[0], w[1], w[2], 3, ds.dim())));
        EXPECT_TRUE(fixtures::close(curve[2].value, oracle::krzanowski_lai(w[1], w[2], w[3], 4, ds.dim())));
        EXPECT_FALSE(curve[3].defined());
        EXPECT_FALSE(ev.evaluate(KrzanowskiLai, parts[1]).defined());
    }
}

TEST(Indices, KrzanowskiLaiUndefinedWithoutLowerNeighbour) {
    auto m = fixtures::random_micro(3, 12, 2, 3);
    auto ds = m.dataset();
    std::mt19937_64 gen(2);
    std::vector<Partition> parts;
    for (int k = 3; k <= 5; ++k) parts.emplace_back(ds, fixtures::random_labels(gen, ds.n_points(), k));
    auto curve = Evaluator(ds, MetricSpec::euclidean()).evaluate_curve(KrzanowskiLai, parts);
    EXPECT_FALSE(curve[0].defined());
    EXPECT_TRUE(curve[1].defined());
    EXPECT_FALSE(curve[2].defined());
}

TEST(Indices, CurveRequiresContiguousK) {
    Dataset ds(6, 1, {0, 1, 2, 3, 4, 5});
    std::vector<Partition> parts{Partition(ds, {0, 0, 0, 1, 1, 1}), Partition(ds, {0, 0, 1, 1, 2, 3})};
    EXPECT_THROW(Evaluator(ds, MetricSpec::euclidean()).evaluate_curve(BallHall, parts), std::invalid_argument);
    std::vector<Partition> single{Partition(ds, {0, 0, 0, 1, 1, 1})};
    EXPECT_EQ(cvi::evaluate_curve(cvi::index_spec(BallHall), ds, single, MetricSpec::euclidean()).size(), 1u);
}

TEST(Indices, SpecExamples) {
    Dataset sep(4, 1, {0, 1, 10, 11});
    Partition p(sep, {0, 0, 1, 1});
    EXPECT_EQ(value(BakerHubertGamma, sep, p), 1.0);
    EXPECT_DOUBLE_EQ(value(Dunn, sep, p), 9.0);
    EXPECT_EQ(value(CIndex, sep, p), 0.0);

    Dataset ds(4, 1, {0, 2, 10, 12});
    Partition q(ds, {0, 0, 1, 1});
    EXPECT_DOUBLE_EQ(value(TraceW, ds, q), 4.0);
    EXPECT_DOUBLE_EQ(value(Rs, ds, q), 25.0 / 26.0);
    EXPECT_DOUBLE_EQ(value(Hartigan, ds, q), std::log(100.0 / 4.0));
    EXPECT_DOUBLE_EQ(value(BallHall, ds, q), 1.0);
    EXPECT_DOUBLE_EQ(value(CalinskiHarabasz, ds, q), 2.0 / 1.0 * 100.0 / 4.0);
    EXPECT_DOUBLE_EQ(value(Rmsstd, ds, q), std::sqrt(4.0 / 2.0));
    EXPECT_DOUBLE_EQ(value(RayTuri, ds, q), 4.0 / (4.0 * 100.0));
    EXPECT_DOUBLE_EQ(value(XieBeni, ds, q), 4.0 / (4.0 * 64.0));
    EXPECT_DOUBLE_EQ(value(DaviesBouldin, ds, q), 0.2);
}

TEST(Indices, UndefinedCases) {
    Dataset ds(4, 1, {0, 2, 10, 12});
    Partition one(ds, {0, 0, 0, 0});
    for (auto id : {CalinskiHarabasz, DaviesBouldin, Dunn, Pbm, RayTuri, SDbw, Silhouette, WemmertGancarski, XieBeni}) {
        auto v = cvi::evaluate(cvi::index_spec(id), ds, one, MetricSpec::euclidean());
        EXPECT_FALSE(v.defined()) << cvi::index_info(id).key;
        EXPECT_TRUE(std::isnan(v.value));
        EXPECT_FALSE(v.undefined_reason.empty());
    }
    Partition singles(ds, {0, 1, 2, 3});
    EXPECT_FALSE(cvi::evaluate(cvi::index_spec(BanfieldRaftery), ds, singles, MetricSpec::euclidean()).defined());
    EXPECT_FALSE(cvi::evaluate(cvi::index_spec(Rmsstd), ds, singles, MetricSpec::euclidean()).defined());
    EXPECT_FALSE(cvi::evaluate(cvi::index_spec(CIndex), ds, singles, MetricSpec::euclidean()).defined());
    // Singleton clusters contribute s(i) = 0.
    EXPECT_EQ(value(Silhouette, ds, singles), 0.0);
    // Isolation with p >= N.
    Evaluator ev(ds, MetricSpec::euclidean(), {.isolation_neighbors = 4});
    EXPECT_FALSE(ev.evaluate(Isolation, Partition(ds, {0, 0, 1, 1})).defined());
}

TEST(Indices, BoundsOnRandomPartitions) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        auto metric = fixtures::metric_for(s);
        auto m = fixtures::random_micro(700 + s, 12, 3, 3, false, fixtures::min_dim(metric));
        auto ds = m.dataset();
        Partition p(ds, m.labels);
        auto in = [&](IndexId id, double lo, double hi) {
            double v = value(id, ds, p, metric);
            if (std::isnan(v)) return;
            EXPECT_GE(v, lo - 1e-12) << cvi::index_info(id).key;
            EXPECT_LE(v, hi + 1e-12) << cvi::index_info(id).key;
        };
        in(Silhouette, -1, 1);
        in(BakerHubertGamma, -1, 1);
        in(CIndex, 0, 1);
        in(GPlus, 0, 1e300);
        in(Isolation, 0, 1);
        in(WemmertGancarski, 0, 1);
        in(Dunn, 0, 1e300);
    }
}

TEST(Indices, InvariantUnderLabelPermutation) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto m = fixtures::random_micro(800 + s, 12, 3, 3, false, 2);
        auto ds = m.dataset();
        std::vector<int> perm(static_cast<std::size_t>(m.k));
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 gen(s);
        std::shuffle(perm.begin(), perm.end(), gen);
        auto relabeled = m.labels;
        for (int& l : relabeled) l = perm[static_cast<std::size_t>(l)];
        auto metric = fixtures::metric_for(s);
        Partition a(ds, m.labels), b(ds, relabeled);
        for (auto id : all_ids())
            EXPECT_TRUE(fixtures::close(value(id, ds, a, metric), value(id, ds, b, metric), 1e-12))
                << cvi::index_info(id).key;
    }
}

TEST(Indices, ScaleBehaviour) {
    const IndexId invariant[] = {BakerHubertGamma, Tau, GPlus,      CIndex,     Silhouette,   DaviesBouldin, Dunn,
                                 Hartigan,         CalinskiHarabasz,   Rs,         McClainRao, PointBiserial,
                                 WemmertGancarski, Isolation};
    const IndexId quadratic[] = {BallHall, TraceW, Pbm};
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto m = fixtures::random_micro(900 + s, 12, 3, 3);
        auto ds = m.dataset();
        const double c = 1.7;
        std::vector<double> scaled(ds.values().begin(), ds.values().end());
        for (double& v : scaled) v *= c;
        Dataset ds2(ds.n_points(), ds.dim(), scaled);
        Partition a(ds, m.labels), b(ds2, m.labels);
        for (auto id : invariant) {
            double x = value(id, ds, a), y = value(id, ds2, b);
            if (id == PointBiserial) y /= c;  // carries the distance unit once
            EXPECT_TRUE(fixtures::close(x, y)) << cvi::index_info(id).key;
        }
        for (auto id : quadratic) EXPECT_TRUE(fixtures::close(c * c * value(id, ds, a), value(id, ds2, b)));
        EXPECT_TRUE(fixtures::close(c * value(Rmsstd, ds, a), value(Rmsstd, ds2, b)));
    }
}

TEST(Indices, DuplicatedFeaturesLeaveRatioIndicesUnchanged) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto m = fixtures::random_micro(950 + s, 12, 3, 3);
        auto ds = m.dataset();
        std::vector<double> doubled;
        for (std::size_t i = 0; i < ds.n_points(); ++i) {
            auto p = ds.point(i);
            doubled.insert(doubled.end(), p.begin(), p.end());
            doubled.insert(doubled.end(), p.begin(), p.end());
        }
        Dataset ds2(ds.n_points(), 2 * ds.dim(), doubled);
        Partition a(ds, m.labels), b(ds2, m.labels);
        for (auto id : {Hartigan, CalinskiHarabasz, Rs, Silhouette, DaviesBouldin})
            EXPECT_TRUE(fixtures::close(value(id, ds, a), value(id, ds2, b))) << cvi::index_info(id).key;
    }
}

TEST(Indices, GammaIsOneWhenPerfectlySeparated) {
    Dataset ds(6, 2, {0, 0, 0, 1, 1, 0, 20, 20, 20, 21, 21, 20});
    Partition p(ds, {0, 0, 0, 1, 1, 1});
    auto pc = cvi::pair_counts(ds, p, MetricSpec::euclidean());
    EXPECT_EQ(pc.s_minus, 0u);
    EXPECT_EQ(value(BakerHubertGamma, ds, p), 1.0);
    EXPECT_EQ(value(GPlus, ds, p), 0.0);
}

TEST(Indices, FreeFunctionsAgreeWithEvaluator) {
    auto m = fixtures::random_micro(42, 12, 3, 3);
    auto ds = m.dataset();
    Partition p(ds, m.labels);
    Evaluator ev(ds, MetricSpec::euclidean());
    for (auto id : all_ids())
        EXPECT_TRUE(fixtures::close(cvi::evaluate(cvi::index_spec(id), ds, p, MetricSpec::euclidean()).value,
                                    ev.evaluate(id, p).value, 0.0, 0.0));
}
