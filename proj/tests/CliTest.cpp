#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "paramlift/Cli.h"

using namespace paramlift;
namespace fs = std::filesystem;

namespace {

std::string modelPath(std::string const& name) {
    return std::string(PARAMLIFT_SOURCE_DIR) + "/models/" + name;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "paramlift");
    std::vector<char const*> argv;
    for (auto const& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(fs::path const& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("paramlift_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string file(std::string const& name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CheckWorkedExample) {
    auto r = invoke({"check", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region", "0.1<=x<=0.8, 0.4<=y<=0.7"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("verdict: safe"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("upper: 0.7833"), std::string::npos) << r.out;
}

TEST_F(CliTest, CheckIllDefinedRegion) {
    auto r = invoke({"check", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region", "0<=x<=1, 0<=y<=1",
                     "--output", file("r.json")});
    EXPECT_EQ(r.code, cli::kExitIllDefined);
    EXPECT_NE(r.out.find("ill_defined"), std::string::npos);
    EXPECT_NE(r.err.find("evaluates to 0"), std::string::npos) << r.err;
    auto json = nlohmann::json::parse(slurp(file("r.json")));
    EXPECT_EQ(json["regions"][0]["verdict"], "ill_defined");
    EXPECT_TRUE(json["regions"][0]["lower"].is_null());
    EXPECT_EQ(json["coverage"]["ill_defined"], "1");
}

TEST_F(CliTest, SynthesizeReportRoundTrips) {
    auto r = invoke({"synthesize", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--coverage", "0.95", "--output",
                     file("report.json"), "--svg", file("map.svg")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto json = nlohmann::json::parse(slurp(file("report.json")));
    EXPECT_EQ(json["property"], "P<=0.8 [F target]");
    EXPECT_EQ(json["space"]["x"][0], "1/100000");
    EXPECT_EQ(json["space"]["y"][1], "99999/100000");

    Rational safe = parseRational(json["coverage"]["safe"].get<std::string>());
    Rational unsafe = parseRational(json["coverage"]["unsafe"].get<std::string>());
    Rational unknown = parseRational(json["coverage"]["unknown"].get<std::string>());
    Rational ill = parseRational(json["coverage"]["ill_defined"].get<std::string>());
    EXPECT_EQ(safe + unsafe + unknown + ill, Rational(1));
    EXPECT_GE(safe + unsafe, fraction(95, 100));

    // Fractions recomputed from the exact boxes agree with the reported ones.
    Region space = Region::parse("1/100000<=x<=99999/100000, 1/100000<=y<=99999/100000");
    Rational recomputedSafe = 0;
    for (auto const& region : json["regions"]) {
        Region::Bounds bounds;
        for (auto const& [name, interval] : region["box"].items()) {
            bounds.emplace_back(name, Interval{parseRational(interval[0].get<std::string>()), parseRational(interval[1].get<std::string>())});
        }
        if (region["verdict"] == "safe") {
            recomputedSafe += measureFraction(Region(bounds), space);
            EXPECT_LE(region["upper"].get<double>(), 0.8);
        }
    }
    EXPECT_EQ(recomputedSafe, safe);
    EXPECT_EQ(json["stats"]["limit_reached"], false);

    auto svg = slurp(file("map.svg"));
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("#4caf50"), std::string::npos);
    EXPECT_NE(svg.find("#e53935"), std::string::npos);
}

TEST_F(CliTest, SynthesizeIsByteDeterministic) {
    std::vector<std::string> base{"synthesize", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--seed", "7", "--output"};
    auto a = base, b = base, c = base;
    a.push_back(file("a.json"));
    b.push_back(file("b.json"));
    c.push_back(file("c.json"));
    c.insert(c.end(), {"--threads", "3"});
    ASSERT_EQ(invoke(a).code, 0);
    ASSERT_EQ(invoke(b).code, 0);
    ASSERT_EQ(invoke(c).code, 0);
    EXPECT_EQ(slurp(file("a.json")), slurp(file("b.json")));
    EXPECT_EQ(slurp(file("a.json")), slurp(file("c.json")));
}

TEST_F(CliTest, CsvReport) {
    auto r = invoke({"synthesize", "--model", modelPath("coin.pm"), "--property", "P<=0.2 [F target]", "--format", "csv", "--output",
                     file("r.csv"), "--svg", file("none.svg")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto csv = slurp(file("r.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "verdict,lower,upper,x_lo,x_hi,x_lo_exact,x_hi_exact");
    EXPECT_NE(csv.find("\nsafe,"), std::string::npos);
    // One parameter: no map, only a warning.
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_FALSE(fs::exists(file("none.svg")));
}

TEST_F(CliTest, LimitReached) {
    auto r = invoke({"synthesize", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--max-checks", "10", "--output",
                     file("r.json")});
    EXPECT_EQ(r.code, cli::kExitLimitReached);
    auto json = nlohmann::json::parse(slurp(file("r.json")));
    EXPECT_EQ(json["stats"]["limit_reached"], true);
    EXPECT_FALSE(json["pending"].empty());
}

TEST_F(CliTest, SampleMode) {
    auto sat = invoke({"sample", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region", "0.1<=x<=0.3, 0.4<=y<=0.7",
                       "--samples", "10", "--output", file("s.json")});
    EXPECT_EQ(sat.code, 0) << sat.err;
    EXPECT_NE(sat.out.find("all_sat"), std::string::npos);
    EXPECT_EQ(nlohmann::json::parse(slurp(file("s.json")))["sample"]["satisfied"], 14);
    auto mixed = invoke({"sample", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region",
                         "0.5<=x<=0.99, 0.01<=y<=0.5"});
    EXPECT_NE(mixed.out.find("neither"), std::string::npos);
    auto ill = invoke({"sample", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region", "0<=x<=1, 0<=y<=1"});
    EXPECT_EQ(ill.code, cli::kExitIllDefined);
}

TEST_F(CliTest, RewardsAndGames) {
    auto reward = invoke({"check", "--model", modelPath("loop.pm"), "--property", "E<=11 [F done]", "--region", "1/2<=x<=9/10"});
    EXPECT_EQ(reward.code, 0) << reward.err;
    EXPECT_NE(reward.out.find("verdict: safe"), std::string::npos);
    auto mdp = invoke({"check", "--model", modelPath("fig3b.pmdp"), "--property", "P<=0.6 [F target]", "--region", "0.1<=x<=0.8, 0.4<=y<=0.7"});
    EXPECT_EQ(mdp.code, 0) << mdp.err;
    EXPECT_NE(mdp.out.find("verdict: unknown"), std::string::npos);
    auto game = invoke({"check", "--model", modelPath("fig3a.psg"), "--property", "P<=0.6 [F target]"});
    EXPECT_EQ(game.code, cli::kExitInputError);
}

TEST_F(CliTest, InputErrors) {
    std::string fig2 = modelPath("fig2.pm");
    EXPECT_EQ(invoke({"check", "--model", file("missing.pm"), "--property", "P<=0.8 [F target]"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--model", fig2, "--property", "P<=2 [F target]"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--model", fig2, "--property", "P<=0.5 [F nowhere]"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--model", fig2, "--property", "P<=0.5 [F target]", "--region", "0<=x<=1"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--model", fig2, "--property", "P<=0.5 [F target]", "--region", "0.5<=x<=0.1, 0<=y<=1"}).code,
              cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--model", fig2, "--property", "P<=0.5 [F target]", "--epsilon", "0"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"synthesize", "--model", fig2, "--property", "P<=0.5 [F target]", "--coverage", "0"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"synthesize", "--model", fig2, "--property", "P<=0.5 [F target]", "--strategy", "diagonal"}).code,
              cli::kExitInputError);
    EXPECT_EQ(invoke({"check", "--property", "P<=0.5 [F target]"}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({}).code, cli::kExitInputError);
    EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);

    std::ofstream(file("bad.pm")) << "@kind pmc\n@parameters x\nstate 0\n  0 : x\n";
    auto bad = invoke({"check", "--model", file("bad.pm"), "--property", "P<=0.5 [F target]"});
    EXPECT_EQ(bad.code, cli::kExitInputError);
    EXPECT_NE(bad.err.find("error"), std::string::npos);
}

TEST_F(CliTest, CornerCapFromEnvironment) {
    ::setenv("PARAMLIFT_CORNER_CAP", "1", 1);
    auto r = invoke({"check", "--model", modelPath("fig2.pm"), "--property", "P<=0.8 [F target]", "--region", "0.1<=x<=0.8, 0.4<=y<=0.7"});
    ::unsetenv("PARAMLIFT_CORNER_CAP");
    EXPECT_EQ(r.code, cli::kExitInputError);
    EXPECT_NE(r.err.find("corner"), std::string::npos) << r.err;
}

TEST_F(CliTest, EliminationKeepsVerdict) {
    auto r = invoke({"synthesize", "--model", modelPath("coin.pm"), "--property", "P<=0.2 [F target]", "--eliminate"});
    EXPECT_EQ(r.code, 0) << r.err;
}
