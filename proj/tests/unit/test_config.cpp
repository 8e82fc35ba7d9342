#include <string>

#include <gtest/gtest.h>

#include "emptyspace/config.hpp"

using namespace emptyspace;

namespace {

char const* const kFull = R"({
  "kind": "compare",
  "seed": 12,
  "output": "runs/a",
  "names": ["bool", "ns"],
  "models": [
    {"type": "poisson", "lambda": 0.1, "grain_radius": {"type": "uniform", "lo": 0.1, "hi": 0.3}},
    {"type": "neyman_scott", "lambda_parent": 0.05,
     "cluster_size": {"type": "compound", "outer": {"type": "poisson", "mean": 1},
                      "inner": {"type": "table", "pmf": [0, 0.5, 0.5]}},
     "cluster_points": {"type": "uniform_box", "half_widths": [0.5, 0.25]},
     "grain_radius": {"type": "uniform", "lo": 0.1, "hi": 0.3}, "window": 20, "dimension": 2}
  ],
  "gauge": {"type": "polygon", "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]},
  "sectors": {"type": "angular", "boundaries": [0, 1, 3]},
  "estimator": {"t_grid": {"from": 0, "to": 1, "points": 11}, "resolution": 64,
                "replications": 3},
  "analytic": {"inner_samples": 1000, "outer_samples": 20, "method": "monte_carlo"}
})";

}  // namespace

TEST(Config, ParsesFullExample)
{
    auto const c = parse_config(kFull);
    EXPECT_EQ(*c.kind, ExperimentKind::compare);
    EXPECT_EQ(c.seed, 12u);
    ASSERT_EQ(c.models.size(), 2u);
    EXPECT_NEAR(c.models[1].intensity(), 0.05 * 1.5, 1e-15);
    EXPECT_EQ(c.estimator.t_grid.size(), 11u);
    EXPECT_EQ(c.sectors.count(), 3);
    EXPECT_EQ(c.analytic.method, InnerMethod::monte_carlo);
    EXPECT_EQ(c.model_name(1), "ns");
}

TEST(Config, RoundTripIsIdempotent)
{
    auto const once = serialize_config(parse_config(kFull));
    auto const twice = serialize_config(parse_config(once));
    EXPECT_EQ(once, twice);
    for (char const* other :
         {R"({"models": [{"type": "mixed_poisson", "mixing": {"type": "gamma", "shape": 2, "rate": 4}}]})",
          R"({"models": [{"type": "gauss_poisson", "lambda_parent": 1, "p": 0.3,
               "cluster_points": {"type": "gaussian", "sigma": 0.2}}],
              "sectors": {"type": "half_space", "normal": [0, 1]},
              "gauge": {"type": "box", "half_widths": [1, 2]}})",
          R"({"order": {"order": "l-g", "a": {"type": "negative_binomial", "p": 0.3, "r": 2},
                        "b": {"type": "binomial", "n": 4, "p": 0.5}}})"})
    {
        auto const a = serialize_config(parse_config(other));
        EXPECT_EQ(a, serialize_config(parse_config(a)));
    }
}

TEST(Config, SpecRoundTrip)
{
    auto const c = parse_config(kFull);
    auto const s = serialize_spec(c.models[1]);
    EXPECT_EQ(serialize_spec(parse_spec(s)), s);
}

TEST(Config, UnknownFieldsAreErrors)
{
    EXPECT_THROW(parse_config(R"({"bogus": 1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"models": [{"type": "poisson", "lambda": 1, "lamda": 2}]})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"estimator": {"t_grid": [0, 1, 2], "points": 3}})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"models": [{"type": "hardcore"}]})"), ConfigError);
    EXPECT_THROW(parse_config("{not json"), ConfigError);
    EXPECT_THROW(parse_config(R"({"models": [{"type": "poisson", "lambda": "1"}]})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"models": [{"type": "poisson", "lambda": -1}]})"),
                 ConfigError);
}

TEST(Config, CompareNeedsEqualIntensity)
{
    auto c = parse_config(R"({"models": [
        {"type": "poisson", "lambda": 0.1},
        {"type": "neyman_scott", "lambda_parent": 0.05,
         "cluster_size": {"type": "poisson", "mean": 2},
         "cluster_points": {"type": "gaussian", "sigma": 0.5}}],
        "estimator": {"t_grid": {"from": 0, "to": 1, "points": 5}}})");
    EXPECT_NO_THROW(c.validate(ExperimentKind::compare));
    c.models[0] = boolean_spec(0.1001, RadiusLaw::degenerate(0));
    EXPECT_THROW(c.validate(ExperimentKind::compare), ConfigError);
    c.models.pop_back();
    EXPECT_THROW(c.validate(ExperimentKind::compare), ConfigError);
}

TEST(Config, KindMismatchAndMissingOrder)
{
    auto const c = parse_config(R"({"kind": "estimate"})");
    EXPECT_THROW(c.validate(ExperimentKind::analytic), ConfigError);
    EXPECT_THROW(parse_config("{}").validate(ExperimentKind::order_check), ConfigError);
    EXPECT_NO_THROW(parse_config("{}").validate(ExperimentKind::reduction_suite));
    EXPECT_EQ(parse_experiment_kind("order_check"), ExperimentKind::order_check);
    EXPECT_EQ(parse_experiment_kind("order-check"), ExperimentKind::order_check);
    EXPECT_THROW(parse_experiment_kind("plot"), ConfigError);
}

TEST(Config, Hash)
{
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
