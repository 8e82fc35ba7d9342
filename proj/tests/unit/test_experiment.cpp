#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "emptyspace/experiment.hpp"

using namespace emptyspace;
namespace fs = std::filesystem;

namespace {

std::string slurp(fs::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch(std::string const& name)
{
    auto const p = fs::path(EMPTYSPACE_TEST_TMP) / name;
    fs::remove_all(p);
    return p;
}

ExperimentConfig estimate_config()
{
    return parse_config(R"({
      "models": [{"type": "neyman_scott", "lambda_parent": 0.2,
                  "cluster_size": {"type": "poisson", "mean": 2},
                  "cluster_points": {"type": "gaussian", "sigma": 0.3}}],
      "sectors": {"type": "uniform", "count": 2},
      "estimator": {"t_grid": {"from": 0, "to": 1, "points": 11},
                    "resolution": 48, "replications": 1}})");
}

}  // namespace

TEST(Run, EstimateSingleReplication)
{
    RunOptions o;
    o.out = scratch("est").string();
    auto const r = run_experiment(ExperimentKind::estimate, estimate_config(), o);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_TRUE(fs::exists(fs::path(*o.out) / "model0_estimate.csv"));
    EXPECT_TRUE(fs::exists(fs::path(*o.out) / "estimate.svg"));
    auto const m = nlohmann::json::parse(slurp(fs::path(*o.out) / "manifest.json"));
    EXPECT_EQ(m["seed"], 1);
    EXPECT_EQ(m["kind"], "estimate");
}

TEST(Run, RerunIsByteIdentical)
{
    RunOptions a, b;
    a.out = scratch("rerun_a").string();
    b.out = scratch("rerun_b").string();
    a.seed = b.seed = 99;
    ASSERT_EQ(run_experiment(ExperimentKind::estimate, estimate_config(), a).exit_code, 0);
    ASSERT_EQ(run_experiment(ExperimentKind::estimate, estimate_config(), b).exit_code, 0);
    for (char const* f : {"model0_estimate.csv", "estimate.svg", "manifest.json"})
        EXPECT_EQ(slurp(fs::path(*a.out) / f), slurp(fs::path(*b.out) / f)) << f;
}

TEST(Run, ValidationFailureIsExitTwo)
{
    auto c = estimate_config();
    c.estimator.resolution = 4;
    RunOptions o;
    o.out = scratch("bad").string();
    EXPECT_EQ(run_experiment(ExperimentKind::estimate, c, o).exit_code, kExitInvalid);
    EXPECT_FALSE(fs::exists(*o.out));
    EXPECT_EQ(run_experiment(ExperimentKind::compare, estimate_config(), o).exit_code,
              kExitInvalid);
}

TEST(Run, OrderCheckVerdictAndCheckMode)
{
    auto c = parse_config(R"({"order": {"order": "cum",
        "a": {"type": "gamma", "shape": 2, "rate": 2},
        "b": {"type": "gamma", "shape": 1, "rate": 1}}})");
    RunOptions o;
    o.check = true;
    o.out = scratch("order").string();
    EXPECT_EQ(run_experiment(ExperimentKind::order_check, c, o).exit_code, kExitOk);
    auto const v = nlohmann::json::parse(slurp(fs::path(*o.out) / "verdict.json"));
    EXPECT_EQ(v["verdict"], "yes");
    std::swap(c.order->scalar_a, c.order->scalar_b);
    EXPECT_EQ(run_experiment(ExperimentKind::order_check, c, o).exit_code,
              kExitCheckFailed);
    o.check = false;
    EXPECT_EQ(run_experiment(ExperimentKind::order_check, c, o).exit_code, kExitOk);
}

TEST(Run, CompareBooleanAgainstCluster)
{
    auto const c = parse_config(R"({
      "models": [{"type": "poisson", "lambda": 1.0, "grain_radius": 0.3},
                 {"type": "neyman_scott", "lambda_parent": 0.5,
                  "cluster_size": {"type": "poisson", "mean": 2},
                  "cluster_points": {"type": "gaussian", "sigma": 0.5},
                  "grain_radius": 0.3}],
      "estimator": {"t_grid": {"from": 0.02, "to": 1, "points": 15},
                    "resolution": 64, "replications": 10},
      "analytic": {"inner_samples": 5000, "outer_samples": 50}})");
    RunOptions o;
    o.check = true;
    o.out = scratch("compare").string();
    auto const r = run_experiment(ExperimentKind::compare, c, o);
    EXPECT_EQ(r.exit_code, kExitOk);
    EXPECT_TRUE(fs::exists(fs::path(*o.out) / "compare.svg"));
    auto const v = nlohmann::json::parse(slurp(fs::path(*o.out) / "verdict_analytic.json"));
    EXPECT_EQ(v["verdict"], "yes");
}

TEST(Suite, FaultNamesAreRejectedElsewhere)
{
    RunOptions o;
    o.fault = "chain";
    o.out = scratch("fault").string();
    EXPECT_EQ(run_experiment(ExperimentKind::estimate, estimate_config(), o).exit_code,
              kExitInvalid);
    o.fault = "no-such-fault";
    EXPECT_EQ(run_experiment(ExperimentKind::reduction_suite, {}, o).exit_code,
              kExitInvalid);
}

TEST(Suite, JsonShape)
{
    std::vector<SuiteCheck> checks{{"a", true, "ok"}, {"b", false, "bad"}};
    auto const j = nlohmann::json::parse(suite_json(checks));
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_EQ(j["checks"].size(), 2u);
}
