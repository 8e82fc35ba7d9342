#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "emptyspace/orderings.hpp"
#include "emptyspace/rng.hpp"

using namespace emptyspace;

namespace {

LgOptions grid_only()
{
    LgOptions o;
    o.shortcuts = false;
    return o;
}

CumOptions cum_grid_only()
{
    CumOptions o;
    o.shortcuts = false;
    return o;
}

std::vector<double> random_pmf(RandomStream& rng, int n)
{
    std::vector<double> p(n);
    double s = 0;
    for (auto& x : p)
        s += (x = rng.uniform() + 0.05);
    for (auto& x : p)
        x /= s;
    return p;
}

}  // namespace

TEST(Pgf, ValuesAndDomain)
{
    EXPECT_DOUBLE_EQ(pgf(CountingLaw::poisson(2), 1.0), 1.0);
    EXPECT_NEAR(pgf_derivative(CountingLaw::poisson(2), 1.0), 2.0, 1e-14);
    EXPECT_NEAR(pgf(CountingLaw::binomial(3, 0.2), 0.0), 0.512, 1e-15);
    EXPECT_DOUBLE_EQ(pgf(CountingLaw::deterministic(1), 0.3), 0.3);
    EXPECT_DOUBLE_EQ(pgf_derivative(CountingLaw::deterministic(1), 0.3), 1.0);
    EXPECT_THROW(pgf(CountingLaw::poisson(1), 1.1), std::domain_error);
    EXPECT_THROW(pgf_derivative(CountingLaw::poisson(1), -0.1), std::domain_error);
}

TEST(Pgf, DerivativeMatchesCentralDifference)
{
    std::vector<CountingLaw> laws{
        CountingLaw::poisson(1.7), CountingLaw::binomial(6, 0.35),
        CountingLaw::negative_binomial(0.45, 3.2), CountingLaw::gauss_poisson(0.3),
        CountingLaw::table({0.2, 0.1, 0.0, 0.7}),
        CountingLaw::compound(CountingLaw::poisson(1), CountingLaw::binomial(2, 0.5))};
    double const h = 1e-5;
    for (auto const& law : laws)
        for (double s = 0.05; s < 0.96; s += 0.1)
            EXPECT_NEAR(pgf_derivative(law, s),
                        (pgf(law, s + h) - pgf(law, s - h)) / (2 * h), 1e-7)
                << law.describe();
}

TEST(LengthBiased, FixedPointsAndShifts)
{
    auto const p = length_biased(CountingLaw::poisson(2.5));
    ASSERT_NE(p.get_if<counting::Poisson>(), nullptr);
    EXPECT_DOUBLE_EQ(p.get_if<counting::Poisson>()->mean, 2.5);
    auto const d = length_biased(CountingLaw::deterministic(1));
    EXPECT_NEAR(d.pmf(0), 1.0, 1e-15);
    EXPECT_THROW(length_biased(CountingLaw::deterministic(0)), std::domain_error);
}

TEST(LgOrder, DeterministicOneIsMinimal)
{
    for (auto const& b : {CountingLaw::poisson(0.3), CountingLaw::binomial(4, 0.9),
                          CountingLaw::table({0.5, 0.0, 0.5})})
    {
        EXPECT_TRUE(lg_order_check(CountingLaw::deterministic(1), b).yes());
        EXPECT_TRUE(lg_order_check(CountingLaw::deterministic(1), b, grid_only()).yes());
    }
}

TEST(LgOrder, PoissonIffRatesOrdered)
{
    auto const v = lg_order_check(CountingLaw::poisson(1), CountingLaw::poisson(2));
    EXPECT_TRUE(v.yes());
    EXPECT_EQ(v.method, VerdictMethod::closed_form_condition);
    auto const w = lg_order_check(CountingLaw::poisson(2), CountingLaw::poisson(1));
    EXPECT_TRUE(w.no());
    EXPECT_DOUBLE_EQ(w.location, 0.0);
    ASSERT_EQ(w.witness.size(), 2u);
    EXPECT_NEAR(w.witness[0], std::exp(-2.0), 1e-14);
    EXPECT_NEAR(w.witness[1], std::exp(-1.0), 1e-14);
    EXPECT_TRUE(lg_order_check(CountingLaw::poisson(2), CountingLaw::poisson(1),
                               grid_only())
                    .no());
}

TEST(LgOrder, BinomialWitness)
{
    auto const v = lg_order_check(CountingLaw::binomial(3, 0.5),
                                  CountingLaw::binomial(3, 0.2));
    ASSERT_TRUE(v.no());
    EXPECT_DOUBLE_EQ(v.location, 0.0);
    EXPECT_NEAR(v.witness[0], 0.25, 1e-14);
    EXPECT_NEAR(v.witness[1], 0.64, 1e-14);
    EXPECT_TRUE(lg_order_check(CountingLaw::binomial(3, 0.2),
                               CountingLaw::binomial(3, 0.5))
                    .yes());
}

TEST(LgOrder, NegativeBinomialDirectionsAgreeWithGrid)
{
    RandomStream rng(14, 0);
    for (int i = 0; i < 50; ++i)
    {
        double const r = 0.5 + 3 * rng.uniform();
        double const p = 0.1 + 0.8 * rng.uniform();
        double const q = 0.1 + 0.8 * rng.uniform();
        auto const a = CountingLaw::negative_binomial(p, r);
        auto const b = CountingLaw::negative_binomial(q, r);
        auto const fast = lg_order_check(a, b);
        auto const slow = lg_order_check(a, b, grid_only());
        EXPECT_EQ(fast.yes(), slow.yes()) << p << " " << q << " " << r;
        EXPECT_EQ(fast.yes(), p >= q);
        // equal p, r <= r~
        auto const c = CountingLaw::negative_binomial(p, r + rng.uniform());
        EXPECT_TRUE(lg_order_check(a, c, grid_only()).yes());
    }
}

TEST(LgOrder, CompoundClosure)
{
    // Build b with b_l = a_l + X, so a <_lg b by construction. Closure also
    // needs g_inner >= g_inner~ (chain rule through the outer derivative).
    RandomStream rng(15, 0);
    auto ordered_pair = [&] {
        auto const a = random_pmf(rng, 4 + static_cast<int>(3 * rng.uniform()));
        auto const x = random_pmf(rng, 3);
        double mean = 0;
        for (std::size_t k = 0; k < a.size(); ++k)
            mean += k * a[k];
        std::vector<double> al(a.size() - 1);
        for (std::size_t k = 0; k + 1 < a.size(); ++k)
            al[k] = (k + 1) * a[k + 1] / mean;
        std::vector<double> bl(al.size() + x.size() - 1, 0.0);
        for (std::size_t i = 0; i < al.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                bl[i + j] += al[i] * x[j];
        std::vector<double> b(bl.size() + 1);
        b[0] = rng.uniform();
        double s = b[0];
        for (std::size_t k = 0; k < bl.size(); ++k)
            s += (b[k + 1] = bl[k] / (k + 1));
        for (auto& v : b)
            v /= s;
        return std::pair{CountingLaw::table(a), CountingLaw::table(b)};
    };
    auto pgf_above = [](CountingLaw const& a, CountingLaw const& b) {
        for (int i = 0; i <= 1000; ++i)
            if (pgf(a, i / 1000.0) < pgf(b, i / 1000.0) - 1e-12)
                return false;
        return true;
    };
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 30; ++i)
    {
        auto const [k, kt] = ordered_pair();
        auto const [t, tt] = ordered_pair();
        ASSERT_TRUE(lg_order_check(k, kt, grid_only()).yes());
        ASSERT_TRUE(lg_order_check(t, tt, grid_only()).yes());
        if (!pgf_above(t, tt))
            continue;
        ++tested;
        auto const v = lg_order_check(CountingLaw::compound(k, t),
                                      CountingLaw::compound(kt, tt), grid_only());
        EXPECT_TRUE(v.yes()) << "margin " << v.margin;
    }
    EXPECT_EQ(tested, 30);
}

TEST(LgOrder, CompoundClosureNeedsInnerPgfOrder)
{
    // Bernoulli laws are all l-g equivalent, yet their 3-fold sums are the
    // binomials of the witnessed pair.
    auto const hi = CountingLaw::table({0.25, 0.75});
    auto const lo = CountingLaw::table({0.95, 0.05});
    ASSERT_TRUE(lg_order_check(hi, lo, grid_only()).yes());
    auto const k = CountingLaw::deterministic(3);
    auto const v = lg_order_check(CountingLaw::compound(k, hi), CountingLaw::compound(k, lo),
                                  grid_only());
    ASSERT_TRUE(v.no());
    EXPECT_DOUBLE_EQ(v.location, 0.0);
    EXPECT_NEAR(v.witness[0], 0.0625, 1e-12);
    EXPECT_NEAR(v.witness[1], 0.9025, 1e-12);
}

//---------------------------------------------------------------------------//
TEST(Laplace, ClosedForms)
{
    auto const g = ScalarLaw::gamma(2.5, 1.5);
    for (double s : {0.0, 0.3, 4.0})
    {
        EXPECT_NEAR(laplace(g, s), std::pow(1.5 / (1.5 + s), 2.5), 1e-14);
        EXPECT_NEAR(laplace_ratio(g, s), 2.5 / (1.5 + s), 1e-14);
        EXPECT_DOUBLE_EQ(laplace_ratio(ScalarLaw::degenerate(0.7), s), 0.7);
    }
    auto const tp = ScalarLaw::two_point(0.5, 2.0, 0.25);
    double const s = 1.3;
    double const num = 0.25 * 0.5 * std::exp(-0.5 * s) + 0.75 * 2.0 * std::exp(-2.0 * s);
    double const den = 0.25 * std::exp(-0.5 * s) + 0.75 * std::exp(-2.0 * s);
    EXPECT_NEAR(laplace_ratio(tp, s), num / den, 1e-14);
    EXPECT_NEAR(laplace_ratio(tp, 5000), 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(laplace_ratio_limit(tp), 0.5);
    EXPECT_THROW(laplace(ScalarLaw::uniform(0, 1), 1.0), std::invalid_argument);
}

TEST(CumOrder, GammaShortcutAgreesWithGrid)
{
    EXPECT_TRUE(cum_order_check(ScalarLaw::gamma(2, 2), ScalarLaw::gamma(1, 1)).yes());
    auto const v = cum_order_check(ScalarLaw::gamma(1, 1), ScalarLaw::gamma(2, 1));
    EXPECT_TRUE(v.no());
    EXPECT_DOUBLE_EQ(v.location, 0.0);
    RandomStream rng(16, 0);
    CumOptions wide = cum_grid_only();
    wide.s_max = 1e4;
    wide.grid = 20001;
    for (int i = 0; i < 100; ++i)
    {
        double const a = 0.25 * (1 + static_cast<int>(16 * rng.uniform()));
        double const b = 0.25 * (1 + static_cast<int>(16 * rng.uniform()));
        double const at = 0.25 * (1 + static_cast<int>(16 * rng.uniform()));
        double const bt = 0.25 * (1 + static_cast<int>(16 * rng.uniform()));
        auto const x = ScalarLaw::gamma(a, b), y = ScalarLaw::gamma(at, bt);
        EXPECT_EQ(cum_order_check(x, y).yes(), cum_order_check(x, y, wide).yes())
            << a << "," << b << " vs " << at << "," << bt;
    }
}

TEST(CumOrder, DegenerateBelowEqualMeanMixtures)
{
    for (auto const& m : {ScalarLaw::gamma(3, 3), ScalarLaw::two_point(0.5, 1.5, 0.5),
                          ScalarLaw::two_point(0.2, 3.4, 0.75)})
    {
        EXPECT_TRUE(cum_order_check(ScalarLaw::degenerate(1.0), m).yes());
        EXPECT_TRUE(cum_order_check(ScalarLaw::degenerate(1.0), m, cum_grid_only()).yes());
    }
}

TEST(Variance, ConsistencyExamples)
{
    auto const r = variance_consistency(ScalarLaw::degenerate(1.0),
                                        ScalarLaw::two_point(0.5, 1.5, 0.5));
    EXPECT_TRUE(r.applicable);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(r.a_below_b, Ordered::yes);
    EXPECT_NEAR(r.var_b, 0.25, 1e-14);
    auto const c = variance_consistency(CountingLaw::deterministic(1),
                                        CountingLaw::table({0.5, 0.0, 0.5}));
    EXPECT_TRUE(c.applicable);
    EXPECT_EQ(c.a_below_b, Ordered::yes);
    EXPECT_NEAR(c.var_b, 1.0, 1e-14);
    auto const n = variance_consistency(CountingLaw::poisson(1), CountingLaw::poisson(2));
    EXPECT_FALSE(n.applicable);
}

TEST(Variance, RandomEqualMeanPairsAreConsistent)
{
    RandomStream rng(17, 0);
    for (int i = 0; i < 50; ++i)
    {
        // Tables on {0..4} with mean 2: symmetric spread around 2.
        double const u = 0.5 * rng.uniform(), v = 0.5 * rng.uniform();
        auto const a = CountingLaw::table({u / 2, 0, 1 - u, 0, u / 2});
        auto const b = CountingLaw::table({0, v / 2, 1 - v, v / 2, 0});
        auto const r = variance_consistency(a, b);
        ASSERT_TRUE(r.applicable);
        EXPECT_TRUE(r.consistent);
        double const m = 0.5 + 2 * rng.uniform();
        double const s = 0.5 * m * rng.uniform();
        auto const x = ScalarLaw::two_point(m - s, m + s, 0.5);
        double const k = 1 + 4 * rng.uniform();
        auto const yy = ScalarLaw::gamma(k, k / m);
        auto const q = variance_consistency(x, yy);
        ASSERT_TRUE(q.applicable);
        EXPECT_TRUE(q.consistent);
    }
}

TEST(StochasticOrder, Examples)
{
    EXPECT_TRUE(stochastic_scaling_order(ScalarLaw::degenerate(0.5),
                                         ScalarLaw::degenerate(1.0))
                    .yes());
    EXPECT_TRUE(stochastic_scaling_order(ScalarLaw::degenerate(1.0),
                                         ScalarLaw::degenerate(0.5))
                    .no());
    EXPECT_TRUE(stochastic_scaling_order(ScalarLaw::uniform(0, 1),
                                         ScalarLaw::uniform(0.5, 1.5))
                    .yes());
    auto const v = stochastic_scaling_order(ScalarLaw::uniform(0, 2),
                                            ScalarLaw::degenerate(1.0));
    EXPECT_TRUE(v.no());
    EXPECT_TRUE(stochastic_scaling_order(ScalarLaw::gamma(2, 2),
                                         ScalarLaw::gamma(2, 1))
                    .yes());
    EXPECT_TRUE(stochastic_scaling_order(ScalarLaw::two_point(0.5, 1, 0.5),
                                         ScalarLaw::two_point(0.5, 1, 0.25))
                    .yes());
}
