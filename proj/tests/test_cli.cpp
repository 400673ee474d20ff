#include <gtest/gtest.h>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json_io.hpp"
#include "support.hpp"

using namespace kwright;
using kwtest::rel_err;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "kwright");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        static std::atomic<int> counter{0};
        dir_ = fs::temp_directory_path() /
               ("kwright_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    fs::path dir_;
};

const char* kGeometric = R"({"k": 1, "upper": [[1, 0, 1]], "lower": []})";
const char* kWorkedJob =
    R"({"operator": {"alpha": 0.5, "alpha_prime": 0.3, "beta": 0.2, "beta_prime": 0.1, "gamma": 1.2},
        "weight": {"rho": 2, "mu": 1, "a": 0.5}})";

}  // namespace

TEST_F(CliTest, Gammak) {
    const Result r = run_cli({"--format", "json", "gammak", "--z", "1", "--k", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_text(r.out);
    EXPECT_NEAR(j["re"].get<double>(), 1.2533141373155003, 1e-14);
}

TEST_F(CliTest, EvalGeometric) {
    const std::string f = write("geo.json", kGeometric);
    const Result r = run_cli({"--format", "json", "eval", "--params", f, "--z", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(io::parse_text(r.out)["re"].get<double>(), 2.0, 1e-12);
    EXPECT_EQ(run_cli({"eval", "--params", f, "--z", "1.5"}).code, cli::kPrecondition);
}

TEST_F(CliTest, Classify) {
    const std::string f = write("geo.json", kGeometric);
    const Result r = run_cli({"--format", "json", "classify", "--params", f, "--z", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_text(r.out);
    EXPECT_DOUBLE_EQ(j["Delta"].get<double>(), -1.0);
    EXPECT_DOUBLE_EQ(j["delta"].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j["mu_re"].get<double>(), -0.5);
    EXPECT_EQ(j["class"].get<std::string>(), to_string(ConvergenceKind::DiskOfRadius));
    EXPECT_TRUE(j["convergent"].get<bool>());
}

TEST_F(CliTest, TransformAndRoundTrip) {
    const std::string job = write("job.json", kWorkedJob);
    const Result r = run_cli({"transform", "--theorem", "3.1", "--params", job});
    ASSERT_EQ(r.code, 0) << r.err;
    const TransformedWright t = io::transformed_from_json(io::parse_text(r.out));
    ASSERT_EQ(t.params.upper.size(), 3u);
    EXPECT_NEAR(t.params.upper[1].a.real(), 1.8, 1e-15);
    EXPECT_NEAR(t.params.lower[2].a.real(), 2.7, 1e-15);
    EXPECT_NEAR(t.x_exponent.real(), 1.4, 1e-15);

    const TransformedWright direct = transform(MSMParams{0.5, 0.3, 0.2, 0.1, 1.2}, {2.0, 1.0, 0.5}, {1.0, {}, {}});
    const std::string saved = write("t.json", r.out);
    const Result e = run_cli({"--format", "json", "eval", "--params", saved, "--x", "1.0"});
    ASSERT_EQ(e.code, 0) << e.err;
    const auto j = io::parse_text(e.out);
    EXPECT_EQ(Complex(j["re"].get<double>(), j["im"].get<double>()), evaluate_image(direct, 1.0));
}

TEST_F(CliTest, TransformOverridesAndCorollaries) {
    const Result r = run_cli({"transform", "--corollary", "3.3", "--alpha", "1", "--gamma", "0.5", "--rho", "2",
                              "--k", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const TransformedWright t = io::transformed_from_json(io::parse_text(r.out));
    EXPECT_EQ(t.source, "Corollary 3.3");
    EXPECT_NEAR(t.params.upper.at(0).a.real(), 3.0, 1e-15);
    EXPECT_NEAR(t.params.lower.at(0).a.real(), 5.0, 1e-15);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run_cli({"transform", "--theorem", "3.1", "--gamma", "0.5", "--rho", "-1"}).code, cli::kPrecondition);
    EXPECT_EQ(run_cli({"eval", "--params", (dir_ / "missing.json").string(), "--z", "0.1"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"eval", "--params", write("bad.json", "{not json"), "--z", "0.1"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"eval", "--params", write("neg.json", R"({"k": -1, "upper": [], "lower": []})"), "--z", "0.1"})
                  .code,
              cli::kInput);
    EXPECT_EQ(run_cli({"transform", "--theorem", "3.7"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"transform", "--corollary", "3.2"}).code, cli::kInput);
    EXPECT_EQ(run_cli({}).code, cli::kInput);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
    const std::string pole = write("pole.json", R"({"k": 1, "upper": [[-2, 0, 1]], "lower": []})");
    EXPECT_EQ(run_cli({"eval", "--params", pole, "--z", "0.1"}).code, cli::kPrecondition);
}

TEST_F(CliTest, PreconditionMessageNamesTheorem) {
    const Result r = run_cli({"transform", "--theorem", "3.1", "--gamma", "0.5", "--rho", "-1"});
    EXPECT_NE(r.err.find("Theorem 3.1"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("Re(rho/k)"), std::string::npos) << r.err;
}

TEST_F(CliTest, TableCsv) {
    const Result r = run_cli({"table", "--theorem", "3.1", "--gamma", "0.5", "--rho", "2", "--a", "0.3", "--points",
                              "5", "--x-min", "0.5", "--x-max", "2.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,re,im,est_error");
    int rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, VerifyDeterministicAndPasses) {
    const std::vector<std::string> args{"--format", "csv", "verify", "--theorem", "3.1", "--draws", "2", "--seed", "7"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, VerifyReportsFailure) {
    const Result r = run_cli({"verify", "--corollary", "3.3", "--draws", "1", "--tol", "1e-300"});
    EXPECT_EQ(r.code, cli::kVerifyFailed) << r.err;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}
