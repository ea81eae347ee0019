#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("cvi_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& log = "log.txt") {
    std::string cmd = std::string("\"") + CVI_BENCH_EXE + "\" " + args + " > \"" + (work_dir() / log).string() +
                      "\" 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::string kBase = "--k-star 3 --dims 5,10 --realizations 2 --seed 7";
const std::string kSmall = kBase + " --threads 1";

}  // namespace

TEST(Cli, RunWritesOutputs) {
    auto out = work_dir() / "a";
    ASSERT_EQ(run("run " + kSmall + " --out-dir \"" + out.string() + "\""), 0) << slurp(work_dir() / "log.txt");
    auto sweep = slurp(out / "sweep.csv");
    auto raw = slurp(out / "raw.csv");
    auto meta = slurp(out / "metadata.txt");
    EXPECT_EQ(sweep.rfind("index,metric,scheme,dim,", 0), 0u);
    EXPECT_EQ(lines(sweep), 1u + 24u * 2u);
    EXPECT_EQ(lines(raw), 1u + 24u * 2u * 2u);
    EXPECT_NE(meta.find("seed=7\n"), std::string::npos);
    EXPECT_NE(meta.find("k-range=2-6\n"), std::string::npos);
}

TEST(Cli, RunIsByteReproducible) {
    auto a = work_dir() / "r1", b = work_dir() / "r2";
    ASSERT_EQ(run("run " + kSmall + " --out-dir \"" + a.string() + "\""), 0);
    ASSERT_EQ(run("run " + kBase + " --threads 2 --out-dir \"" + b.string() + "\""), 0);
    EXPECT_EQ(slurp(a / "sweep.csv"), slurp(b / "sweep.csv"));
    EXPECT_EQ(slurp(a / "raw.csv"), slurp(b / "raw.csv"));
}

TEST(Cli, ConfigFileAndOverrides) {
    auto cfg = work_dir() / "sweep.cfg";
    std::ofstream(cfg) << "# small sweep\nk-star=3\ndims=5,10\nrealizations=1\nseed=1\n"
                          "indices=dunn,silhouette\nmetric=euclidean\n";
    auto out = work_dir() / "c";
    ASSERT_EQ(run("run --config \"" + cfg.string() + "\" --seed 2 --metric cosine --metric minkowski:p=1 --out-dir \"" +
                  out.string() + "\""),
              0)
        << slurp(work_dir() / "log.txt");
    auto sweep = slurp(out / "sweep.csv");
    auto meta = slurp(out / "metadata.txt");
    EXPECT_EQ(lines(sweep), 1u + 2u * 2u * 2u);
    EXPECT_NE(meta.find("seed=2\n"), std::string::npos);
    EXPECT_NE(meta.find("metric=cosine,minkowski:p=1\n"), std::string::npos);
    EXPECT_NE(meta.find("indices=dunn,silhouette\n"), std::string::npos);
    EXPECT_EQ(sweep.find("euclidean"), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
    auto out = work_dir() / "bad";
    EXPECT_EQ(run("run --k-star 5 --k-range 5-8 --out-dir \"" + out.string() + "\""), 2);
    EXPECT_EQ(run("run --dims 10,5 --out-dir \"" + out.string() + "\""), 2);
    EXPECT_EQ(run("run --indices nope --out-dir \"" + out.string() + "\""), 2);
    EXPECT_EQ(run("run --config \"" + (work_dir() / "missing.cfg").string() + "\""), 2);
    EXPECT_EQ(run("diagnose --distributions uniform,spiral --dims 5"), 2);
    EXPECT_EQ(run("diagnose --hubness-n 0 --dims 5"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_FALSE(fs::exists(out / "sweep.csv"));
}

TEST(Cli, Diagnose) {
    auto out = work_dir() / "diag.csv";
    ASSERT_EQ(run("diagnose --distributions uniform,clusters:3 --dims 5,20 --n 200 --seed 4 --out \"" + out.string() +
                  "\""),
              0);
    auto csv = slurp(out);
    EXPECT_EQ(csv.rfind("distribution,metric,dim,seed,concentration_ratio,hubness,deformation_ratio\n", 0), 0u);
    EXPECT_EQ(lines(csv), 5u);
    EXPECT_NE(csv.find("clusters:3,euclidean,20,"), std::string::npos);
}

TEST(Cli, ListIndices) {
    ASSERT_EQ(run("list-indices", "list.csv"), 0);
    std::istringstream in(slurp(work_dir() / "list.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "id,name,optimum,type");
    std::set<std::string> ids;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        ids.insert(line.substr(0, line.find(',')));
    }
    EXPECT_EQ(rows, 24u);
    EXPECT_EQ(ids.size(), 24u);
    EXPECT_TRUE(ids.count("davies-bouldin"));
}

TEST(Cli, Generate) {
    auto a = work_dir() / "g1.csv", b = work_dir() / "g2.csv";
    ASSERT_EQ(run("generate --k-star 3 --dim 4 --seed 5 --out \"" + a.string() + "\""), 0);
    ASSERT_EQ(run("generate --k-star 3 --dim 4 --seed 5 --out \"" + b.string() + "\""), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_GT(lines(slurp(a)), 3u * 150u);
    EXPECT_EQ(run("generate --scheme uniform-noise --noise-fraction 1.5"), 2);
}
