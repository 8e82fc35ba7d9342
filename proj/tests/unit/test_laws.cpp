#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "emptyspace/laws.hpp"
#include "emptyspace/rng.hpp"

using namespace emptyspace;

namespace {

double log_choose(double n, double k)
{
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// pmf tables computed here, independently of the library
std::vector<double> poisson_pmf(double c, int kmax)
{
    std::vector<double> p(kmax + 1);
    for (int k = 0; k <= kmax; ++k)
        p[k] = std::exp(-c + k * std::log(c) - std::lgamma(k + 1.0));
    return p;
}

std::vector<double> binomial_pmf(int n, double q)
{
    std::vector<double> p(n + 1);
    for (int k = 0; k <= n; ++k)
        p[k] = std::exp(log_choose(n, k)) * std::pow(q, k)
               * std::pow(1 - q, n - k);
    return p;
}

std::vector<double> nb_pmf(double q, double r, int kmax)
{
    std::vector<double> p(kmax + 1);
    for (int k = 0; k <= kmax; ++k)
        p[k] = std::exp(std::lgamma(k + r) - std::lgamma(r) - std::lgamma(k + 1.0)
                        + r * std::log(q) + k * std::log1p(-q));
    return p;
}

double series(std::vector<double> const& p, double s)
{
    double g = 0;
    for (std::size_t k = p.size(); k-- > 0;)
        g = g * s + p[k];
    return g;
}

double series_derivative(std::vector<double> const& p, double s)
{
    double g = 0;
    for (std::size_t k = p.size(); k-- > 1;)
        g = g * s + k * p[k];
    return g;
}

struct Case
{
    CountingLaw law;
    std::vector<double> pmf;
};

std::vector<Case> cases()
{
    return {
        {CountingLaw::deterministic(3), {0, 0, 0, 1}},
        {CountingLaw::poisson(2.5), poisson_pmf(2.5, 60)},
        {CountingLaw::binomial(7, 0.3), binomial_pmf(7, 0.3)},
        {CountingLaw::negative_binomial(0.4, 2.5), nb_pmf(0.4, 2.5, 200)},
        {CountingLaw::gauss_poisson(0.25), {0, 0.75, 0.25}},
        {CountingLaw::table({0.1, 0.2, 0.3, 0.4}), {0.1, 0.2, 0.3, 0.4}},
    };
}

}  // namespace

TEST(CountingLaw, PgfMatchesPmfSeries)
{
    for (auto const& c : cases())
    {
        for (double s : {0.0, 0.2, 0.5, 0.9, 1.0})
        {
            EXPECT_NEAR(c.law.pgf(s), series(c.pmf, s), 1e-12)
                << c.law.describe() << " s=" << s;
            EXPECT_NEAR(c.law.pgf_derivative(s), series_derivative(c.pmf, s),
                        1e-10)
                << c.law.describe() << " s=" << s;
        }
        for (int k = 0; k < 6; ++k)
        {
            double const want = k < static_cast<int>(c.pmf.size()) ? c.pmf[k] : 0;
            EXPECT_NEAR(c.law.pmf(k), want, 1e-12) << c.law.describe();
        }
    }
}

TEST(CountingLaw, MomentsMatchPmf)
{
    for (auto const& c : cases())
    {
        double m = 0, m2 = 0;
        for (std::size_t k = 0; k < c.pmf.size(); ++k)
        {
            m += k * c.pmf[k];
            m2 += double(k) * k * c.pmf[k];
        }
        EXPECT_NEAR(c.law.mean(), m, 1e-9) << c.law.describe();
        EXPECT_NEAR(c.law.variance(), m2 - m * m, 1e-8) << c.law.describe();
    }
}

TEST(CountingLaw, SampleMean)
{
    for (auto const& c : cases())
    {
        RandomStream rng(3, 4);
        int const n = 100000;
        double s = 0;
        for (int i = 0; i < n; ++i)
            s += c.law.sample(rng);
        double const se = std::sqrt(c.law.variance() / n);
        EXPECT_NEAR(s / n, c.law.mean(), 5 * se + 1e-12) << c.law.describe();
    }
}

TEST(CountingLaw, CompoundIsPgfComposition)
{
    auto const outer = CountingLaw::poisson(1.5);
    auto const inner = CountingLaw::binomial(3, 0.4);
    auto const comp = CountingLaw::compound(outer, inner);
    // Oracle: explicit convolution powers of the inner pmf.
    auto const ip = binomial_pmf(3, 0.4);
    auto const op = poisson_pmf(1.5, 40);
    std::vector<double> total(200, 0.0), power{1.0};
    for (std::size_t n = 0; n < op.size(); ++n)
    {
        for (std::size_t k = 0; k < power.size() && k < total.size(); ++k)
            total[k] += op[n] * power[k];
        std::vector<double> next(power.size() + ip.size() - 1, 0.0);
        for (std::size_t a = 0; a < power.size(); ++a)
            for (std::size_t b = 0; b < ip.size(); ++b)
                next[a + b] += power[a] * ip[b];
        power = std::move(next);
    }
    for (double s : {0.0, 0.3, 0.7, 1.0})
        EXPECT_NEAR(comp.pgf(s), series(total, s), 1e-10);
    for (int k = 0; k < 8; ++k)
        EXPECT_NEAR(comp.pmf(k), total[k], 1e-10);
    EXPECT_NEAR(comp.mean(), 1.5 * 1.2, 1e-12);
}

TEST(CountingLaw, LengthBiasedPmf)
{
    for (auto const& c : cases())
    {
        auto const lb = length_biased(c.law);
        double const m = c.law.mean();
        for (int k = 0; k + 1 < static_cast<int>(c.pmf.size()) && k < 20; ++k)
            EXPECT_NEAR(lb.pmf(k), (k + 1) * c.pmf[k + 1] / m, 1e-9)
                << c.law.describe() << " k=" << k;
        // g_l(s) = g'(s) / E
        for (double s : {0.0, 0.4, 1.0})
            EXPECT_NEAR(lb.pgf(s), c.law.pgf_derivative(s) / m, 1e-9);
    }
}

TEST(CountingLaw, LengthBiasedNegativeBinomialShiftsR)
{
    auto const lb = length_biased(CountingLaw::negative_binomial(0.3, 2.0));
    auto const* nb = lb.get_if<counting::NegativeBinomial>();
    ASSERT_NE(nb, nullptr);
    EXPECT_DOUBLE_EQ(nb->p, 0.3);
    EXPECT_DOUBLE_EQ(nb->r, 3.0);
}

TEST(CountingLaw, RejectsBadParameters)
{
    EXPECT_THROW(CountingLaw::poisson(-1), std::invalid_argument);
    EXPECT_THROW(CountingLaw::binomial(3, 1.5), std::invalid_argument);
    EXPECT_THROW(CountingLaw::negative_binomial(0, 1), std::invalid_argument);
    EXPECT_THROW(CountingLaw::table({0.5, 0.2}), std::invalid_argument);
    EXPECT_THROW(CountingLaw::deterministic(-1), std::invalid_argument);
}

//---------------------------------------------------------------------------//
TEST(ScalarLaw, GammaSurvivalMatchesIntegratedDensity)
{
    double const a = 2.5, b = 1.5;
    auto const law = ScalarLaw::gamma(a, b);
    // Simpson integration of the density up to x.
    auto cdf = [&](double x) {
        int const n = 4000;
        double const h = x / n;
        auto f = [&](double y) {
            return y <= 0 ? 0.0
                          : std::exp(a * std::log(b) + (a - 1) * std::log(y) - b * y
                                     - std::lgamma(a));
        };
        double s = f(0) + f(x);
        for (int i = 1; i < n; ++i)
            s += (i % 2 ? 4 : 2) * f(i * h);
        return s * h / 3;
    };
    for (double x : {0.3, 1.0, 2.0, 5.0})
        EXPECT_NEAR(law.survival(x), 1 - cdf(x), 1e-8);
    EXPECT_NEAR(law.mean(), a / b, 1e-14);
    EXPECT_NEAR(law.variance(), a / (b * b), 1e-14);
    EXPECT_NEAR(law.moment(3), std::tgamma(a + 3) / std::tgamma(a) / (b * b * b),
                1e-10);
}

TEST(ScalarLaw, QuantileInvertsDistribution)
{
    std::vector<ScalarLaw> laws{ScalarLaw::gamma(0.7, 2), ScalarLaw::uniform(1, 3),
                                ScalarLaw::two_point(0.5, 2, 0.3),
                                ScalarLaw::degenerate(1.25)};
    for (auto const& law : laws)
    {
        for (double u : {0.01, 0.2, 0.5, 0.8, 0.99})
        {
            double const x = law.quantile(u);
            // left-continuous inverse: F(x) >= u and F(x-) <= u
            EXPECT_GE(1 - law.survival(x), u - 1e-10) << law.describe();
            EXPECT_LE(1 - law.survival_left(x), u + 1e-10) << law.describe();
        }
    }
}

TEST(ScalarLaw, UniformAndTwoPointMoments)
{
    auto const u = ScalarLaw::uniform(1, 3);
    EXPECT_DOUBLE_EQ(u.mean(), 2.0);
    EXPECT_NEAR(u.variance(), 4.0 / 12, 1e-14);
    EXPECT_NEAR(u.moment(2), (27.0 - 1.0) / 3 / 2, 1e-14);
    auto const t = ScalarLaw::two_point(0.5, 2, 0.3);
    EXPECT_NEAR(t.mean(), 0.3 * 0.5 + 0.7 * 2, 1e-14);
    EXPECT_NEAR(t.moment(2), 0.3 * 0.25 + 0.7 * 4, 1e-14);
    EXPECT_DOUBLE_EQ(t.inf(), 0.5);
    EXPECT_DOUBLE_EQ(t.sup(), 2.0);
    EXPECT_TRUE(ScalarLaw::degenerate(0).is_zero());
    EXPECT_FALSE(t.is_zero());
}

TEST(ScalarLaw, SampleMean)
{
    auto const law = ScalarLaw::gamma(3, 2);
    RandomStream rng(8, 8);
    int const n = 100000;
    double s = 0;
    for (int i = 0; i < n; ++i)
        s += law.sample(rng);
    EXPECT_NEAR(s / n, 1.5, 5 * std::sqrt(law.variance() / n));
}

TEST(ClusterPointLaw, GaussianAndBallSecondMoments)
{
    RandomStream rng(2, 2);
    auto const g = ClusterPointLaw::gaussian(0.5);
    auto const b = ClusterPointLaw::uniform_ball(2.0);
    int const n = 100000;
    double sg = 0, sb = 0;
    for (int i = 0; i < n; ++i)
    {
        Vec const x = g.sample(rng, 2);
        sg += dot(x, x);
        Vec const y = b.sample(rng, 3);
        ASSERT_LE(norm(y), 2.0);
        sb += dot(y, y);
    }
    EXPECT_NEAR(sg / n, 2 * 0.25, 0.01);
    EXPECT_NEAR(sb / n, 3.0 / 5 * 4, 0.03);
}
