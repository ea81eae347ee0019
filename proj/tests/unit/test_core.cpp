#include <gtest/gtest.h>

#include <stdexcept>

#include "cvi/core.hpp"
#include "cvi/indices.hpp"

using cvi::Dataset;
using cvi::Partition;

TEST(Dataset, RoundTripsRowMajorBuffer) {
    std::vector<double> v{1, 2, 3, 4, 5, 6};
    Dataset ds(3, 2, v);
    EXPECT_EQ(ds.n_points(), 3u);
    EXPECT_EQ(ds.dim(), 2u);
    EXPECT_EQ(std::vector<double>(ds.values().begin(), ds.values().end()), v);
    EXPECT_EQ(ds.point(1)[0], 3.0);
    EXPECT_EQ(ds.point(2)[1], 6.0);
}

TEST(Dataset, RejectsInvalidShapes) {
    EXPECT_THROW(Dataset(1, 1, {1.0}), std::invalid_argument);
    EXPECT_THROW(Dataset(2, 0, {}), std::invalid_argument);
    EXPECT_THROW(Dataset(2, 2, {1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(Dataset(2, 1, {1.0, std::nan("")}), std::invalid_argument);
    EXPECT_THROW(Dataset(2, 1, {1.0, 1.0 / 0.0}), std::invalid_argument);
}

TEST(Dataset, ValidatesTruthLabels) {
    EXPECT_THROW(Dataset(3, 1, {0, 1, 2}, std::vector<int>{0, 1}), std::invalid_argument);
    EXPECT_THROW(Dataset(3, 1, {0, 1, 2}, std::vector<int>{0, 2, 2}), std::invalid_argument);  // group 1 missing
    EXPECT_THROW(Dataset(3, 1, {0, 1, 2}, std::vector<int>{0, -2, 1}), std::invalid_argument);
    Dataset ds(4, 1, {0, 1, 2, 3}, std::vector<int>{0, 1, cvi::kNoiseLabel, 1});
    EXPECT_TRUE(ds.has_truth());
    EXPECT_EQ(ds.n_groups(), 2u);
}

TEST(Dataset, SubsetAndBarycenter) {
    Dataset ds(3, 2, {0, 0, 2, 4, 4, 8}, std::vector<int>{0, 0, 1});
    auto c = ds.barycenter();
    EXPECT_DOUBLE_EQ(c[0], 2.0);
    EXPECT_DOUBLE_EQ(c[1], 4.0);
    std::vector<std::size_t> rows{2, 0};
    auto sub = ds.subset(rows);
    EXPECT_EQ(sub.n_points(), 2u);
    EXPECT_EQ(sub.point(0)[1], 8.0);
    EXPECT_FALSE(sub.has_truth());
}

TEST(Partition, ComputesSizesBarycentersMembers) {
    Dataset ds(4, 1, {0, 2, 10, 12});
    Partition p(ds, {1, 1, 0, 0});
    EXPECT_EQ(p.n_clusters(), 2u);
    EXPECT_EQ(p.cluster_size(0), 2u);
    EXPECT_DOUBLE_EQ(p.barycenter(0)[0], 11.0);
    EXPECT_DOUBLE_EQ(p.barycenter(1)[0], 1.0);
    EXPECT_EQ(p.members(1), (std::vector<std::size_t>{0, 1}));
    std::size_t total = 0;
    for (auto s : p.cluster_sizes()) total += s;
    EXPECT_EQ(total, ds.n_points());
}

TEST(Partition, RejectsEmptyClustersAndBadIds) {
    Dataset ds(3, 1, {0, 1, 2});
    EXPECT_THROW(Partition(ds, {0, 0, 2}, 3), std::invalid_argument);
    EXPECT_THROW(Partition(ds, {0, 1, 3}, 3), std::invalid_argument);
    EXPECT_THROW(Partition(ds, {0, -1, 1}, 2), std::invalid_argument);
    EXPECT_THROW(Partition(ds, {0, 1}, 2), std::invalid_argument);
}

TEST(MetricSpec, ValidatesExponent) {
    EXPECT_THROW(cvi::MetricSpec::minkowski(0.0), std::invalid_argument);
    EXPECT_THROW(cvi::MetricSpec::minkowski(-1.0), std::invalid_argument);
    EXPECT_EQ(cvi::MetricSpec::minkowski(0.5).p, 0.5);
}

TEST(Registry, MatchesTable) {
    using enum cvi::OptimumType;
    using enum cvi::IndexClass;
    struct Row {
        const char* key;
        cvi::OptimumType opt;
        cvi::IndexClass cls;
    };
    const Row expected[] = {
        {"baker-hubert-gamma", Max, W}, {"ball-hall", Elbow, W},        {"banfield-raftery", Elbow, W},
        {"bic", Elbow, W},              {"c-index", Min, WD},           {"calinski-harabasz", Max, WB},
        {"davies-bouldin", Min, WB},    {"dunn", Max, WB},              {"g-plus", Min, WD},
        {"isolation", Knee, WB},        {"krzanowski-lai", Max, W},     {"hartigan", Knee, WB},
        {"mcclain-rao", Elbow, WB},     {"pbm", Max, WBD},              {"point-biserial", Max, WB},
        {"rmsstd", Elbow, W},           {"rs", Knee, WD},               {"ray-turi", Elbow, WB},
        {"s-dbw", Elbow, WB},           {"silhouette", Max, WB},        {"tau", Max, WD},
        {"trace-w", Elbow, W},          {"wemmert-gancarski", Max, WB}, {"xie-beni", Elbow, WB},
    };
    auto reg = cvi::index_registry();
    ASSERT_EQ(reg.size(), 24u);
    for (std::size_t i = 0; i < reg.size(); ++i) {
        EXPECT_EQ(reg[i].key, expected[i].key);
        EXPECT_EQ(reg[i].optimum, expected[i].opt) << reg[i].key;
        EXPECT_EQ(reg[i].index_class, expected[i].cls) << reg[i].key;
        EXPECT_EQ(static_cast<std::size_t>(reg[i].id), i);
        EXPECT_EQ(cvi::find_index(reg[i].key), reg[i].id);
    }
    EXPECT_FALSE(cvi::find_index("nope").has_value());
}
