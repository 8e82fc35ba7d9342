#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "emptyspace/analytic.hpp"

using namespace emptyspace;
using std::numbers::pi;

namespace {

auto const kNone = RadiusLaw::degenerate(0);
GaugeBody const kBall = GaugeBody::ball(1.0, 2);

// Composite Simpson on [a, b] with n (even) panels.
template<class F>
double simpson(F&& f, double a, double b, int n)
{
    double const h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += (i % 2 ? 4 : 2) * f(a + i * h);
    return s * h / 3;
}

// P(|Y - c| > t) for Y ~ N(0, sigma^2 I_2) and |c| = s, by polar
// integration of the Gaussian density over the disk.
double outside_disk(double s, double t, double sigma)
{
    auto inner = [&](double rho) {
        return rho * simpson(
                   [&](double th) {
                       double const x = s + rho * std::cos(th);
                       double const y = rho * std::sin(th);
                       return std::exp(-(x * x + y * y) / (2 * sigma * sigma));
                   },
                   0, 2 * pi, 128);
    };
    double const mass = simpson(inner, 0, t, 128) / (2 * pi * sigma * sigma);
    return 1 - mass;
}

double rice_pdf(double s, double nu, double sigma)
{
    double const z = s * nu / (sigma * sigma);
    return s / (sigma * sigma)
           * std::exp(-(s * s + nu * nu) / (2 * sigma * sigma))
           * std::cyl_bessel_i(0.0, z);
}

// E g'(P(Y outside the contact disk)) with the disk center at Rice distance.
double ns_factor(CountingLaw const& size, double t, double sigma)
{
    double const lo = std::max(0.0, t - 8 * sigma), hi = t + 8 * sigma;
    return simpson(
        [&](double s) {
            return rice_pdf(s, t, sigma)
                   * size.pgf_derivative(outside_disk(s, t, sigma));
        },
        lo, hi, 96);
}

}  // namespace

TEST(Boolean, PointGrainsClosedForm)
{
    std::vector<double> const t{0.0, 0.2, 0.7, 1.5};
    auto const h = boolean_hazard(0.3, kNone, kBall, t, DirectionSectors::all());
    EXPECT_EQ(h.method, "closed");
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        EXPECT_NEAR(h.r[0][k], 2 * pi * 0.3 * t[k], 1e-12);
        EXPECT_NEAR(h.F[0][k], 1 - std::exp(-0.3 * pi * t[k] * t[k]), 1e-12);
    }
}

TEST(Boolean, BallGrainsAndSectors)
{
    double const lambda = 0.5, r0 = 0.3;
    std::vector<double> const t{0.0, 0.4, 1.0};
    auto const h = boolean_hazard(lambda, ScalarLaw::degenerate(r0), kBall, t,
                                  DirectionSectors::uniform_angular(4));
    ASSERT_EQ(h.labels.size(), 5u);
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        double const total = 2 * pi * lambda * (r0 + t[k]);
        EXPECT_NEAR(h.r[0][k], total, 1e-12);
        for (int c = 1; c <= 4; ++c)
            EXPECT_NEAR(h.r[c][k], total / 4, 1e-12);
        EXPECT_NEAR(h.F[0][k], 1 - std::exp(-lambda * pi * (r0 + t[k]) * (r0 + t[k])),
                    1e-12);
    }
}

TEST(MixedPoisson, GammaClosedForm)
{
    // S(t) = (b / (b + pi t^2))^a, r = 2 pi a t / (b + pi t^2).
    double const a = 2, b = 3;
    std::vector<double> const t{0.1, 0.5, 1.0, 2.0};
    auto const h = mixed_poisson_hazard(ScalarLaw::gamma(a, b), kNone, kBall, t,
                                        DirectionSectors::all());
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        double const x = pi * t[k] * t[k];
        EXPECT_NEAR(h.r[0][k], 2 * pi * a * t[k] / (b + x), 1e-10);
        EXPECT_NEAR(h.F[0][k], 1 - std::pow(b / (b + x), a), 1e-10);
    }
}

TEST(NeymanScott, QuadratureAgainstIndependentIntegration)
{
    double const lp = 0.05, sigma = 0.5;
    auto const size = CountingLaw::poisson(2);
    std::vector<double> const t{0.3, 1.0, 2.0};
    auto const h = neyman_scott_hazard(lp, size, ClusterPointLaw::gaussian(sigma),
                                       kBall, t, DirectionSectors::all());
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        double const want = lp * 2 * pi * t[k] * ns_factor(size, t[k], sigma);
        EXPECT_NEAR(h.r[0][k], want, 1e-5 * want) << "t=" << t[k];
    }
}

TEST(GaussPoisson, ClosedFormAgainstIndependentIntegration)
{
    double const lp = 0.1, p = 0.4, sigma = 0.7;
    std::vector<double> const t{0.3, 1.0, 2.5};
    auto const h = gauss_poisson_hazard(lp, p, ClusterPointLaw::gaussian(sigma),
                                        kBall, t, DirectionSectors::all());
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        double const q = outside_disk(t[k], t[k], sigma);
        double const want = lp * 2 * pi * t[k] * ((1 - p) + 2 * p * q);
        EXPECT_NEAR(h.r[0][k], want, 1e-6 * want);
    }
}

TEST(NeymanScott, MonteCarloPathsAgreeWithQuadrature)
{
    auto const size = CountingLaw::negative_binomial(0.5, 2);
    auto const pts = ClusterPointLaw::gaussian(0.4);
    auto const t = linear_grid(0.1, 2.0, 8);
    AnalyticOptions mc;
    mc.method = InnerMethod::monte_carlo;
    mc.inner_samples = 40000;
    auto const sectors = DirectionSectors::uniform_angular(2);
    auto const q = neyman_scott_hazard(0.1, size, pts, kBall, t, sectors);
    auto const m = neyman_scott_hazard(0.1, size, pts, kBall, t, sectors, mc);
    auto const palm = poisson_cluster_hazard(
        neyman_scott_spec(0.1, size, pts, kNone), kBall, t, sectors, mc);
    for (std::size_t c = 0; c < q.labels.size(); ++c)
    {
        for (std::size_t k = 0; k < t.size(); ++k)
        {
            EXPECT_NEAR(m.r[c][k], q.r[c][k], 4 * m.r_se[c][k] + 1e-12);
            EXPECT_NEAR(palm.r[c][k], q.r[c][k], 4 * palm.r_se[c][k] + 1e-12);
        }
    }
}

TEST(NeymanScott, ScaledHazardNonincreasing)
{
    auto const t = linear_grid(0.01, 6.0, 120);
    for (auto const& size : {CountingLaw::poisson(2), CountingLaw::binomial(5, 0.5),
                             CountingLaw::negative_binomial(0.3, 1.5)})
    {
        auto const h = neyman_scott_hazard(0.05, size, ClusterPointLaw::gaussian(0.5),
                                           kBall, t, DirectionSectors::all());
        for (std::size_t k = 1; k < t.size(); ++k)
            EXPECT_LE(h.r[0][k] / t[k], h.r[0][k - 1] / t[k - 1] * (1 + 1e-10))
                << size.describe() << " t=" << t[k];
    }
}

TEST(Limits, PointGrainClusters)
{
    auto const spec = neyman_scott_spec(0.05, CountingLaw::poisson(2),
                                        ClusterPointLaw::gaussian(0.5), kNone);
    auto const lim = asymptotic_limits(spec, kBall, DirectionSectors::uniform_angular(4));
    ASSERT_EQ(lim.labels.size(), 5u);
    EXPECT_NEAR(lim.small_t[0], 0.1 * 2 * pi, 1e-12);
    EXPECT_NEAR(lim.large_t[0], 0.05 * (1 - std::exp(-2.0)) * 2 * pi, 1e-12);
    EXPECT_NEAR(lim.small_t[1], 0.1 * pi / 2, 1e-12);
    EXPECT_NEAR(lim.nu[0], 2 * pi, 1e-12);
}

TEST(Limits, MixedPoisson)
{
    auto const spec = mixed_poisson_spec(ScalarLaw::two_point(0.2, 1.0, 0.5), kNone);
    auto const lim = asymptotic_limits(spec, kBall, DirectionSectors::all());
    EXPECT_NEAR(lim.small_t[0], 0.6 * 2 * pi, 1e-12);
    EXPECT_NEAR(lim.large_t[0], 0.2 * 2 * pi, 1e-12);
}

TEST(VolumeFraction, ExactModels)
{
    auto const grain = ScalarLaw::degenerate(0.4);
    auto const b = volume_fraction(boolean_spec(0.5, grain));
    EXPECT_TRUE(b.exact);
    EXPECT_NEAR(b.value, 1 - std::exp(-0.5 * pi * 0.16), 1e-14);
    auto const m = volume_fraction(mixed_poisson_spec(ScalarLaw::gamma(2, 4), grain));
    EXPECT_NEAR(m.value, 1 - std::pow(4 / (4 + pi * 0.16), 2), 1e-12);
    EXPECT_LE(m.value, b.value + 1e-15);
}

TEST(VolumeFraction, DisjointClusterGrainsMatchBoolean)
{
    ProcessSpec spec;
    spec.process = processes::GenericCluster{
        0.2, "pair",
        [](RandomStream&, int, std::vector<Vec>& out) {
            out = {Vec{}, Vec{{1.0, 0.0}}};
        },
        2.0, 1.0, 2, 1.0};
    spec.grain_radius = ScalarLaw::degenerate(0.3);
    auto const vf = volume_fraction(spec);
    EXPECT_NEAR(vf.value, 1 - std::exp(-0.4 * pi * 0.09), 1e-12);
}

TEST(KTable, BooleanIsSectorFraction)
{
    auto const spec = boolean_spec(0.5, ScalarLaw::degenerate(0.3));
    auto const kt = k_table(spec, kBall, {0.1, 0.5}, DirectionSectors::uniform_angular(2));
    ASSERT_EQ(kt.K.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
    {
        EXPECT_TRUE(kt.used[i]);
        EXPECT_NEAR(kt.K[i][0][0], 1.0, 1e-12);
        EXPECT_NEAR(kt.K[i][1][1], 0.5, 1e-12);
    }
}

TEST(KTable, BooleanDominatesCluster)
{
    auto const grain = ScalarLaw::degenerate(0.3);
    auto const t = linear_grid(0.05, 2.0, 10);
    AnalyticOptions o;
    o.inner_samples = 20000;
    auto const kb = k_table(boolean_spec(0.1, grain), kBall, t, DirectionSectors::all(), o);
    auto const kc = k_table(neyman_scott_spec(0.05, CountingLaw::poisson(2),
                                              ClusterPointLaw::gaussian(0.5), grain),
                            kBall, t, DirectionSectors::all(), o);
    EXPECT_TRUE(k_table_order(kb, kc).yes());
    EXPECT_FALSE(k_table_order(kc, kb).yes());
}

TEST(GrainScaling, SufficientCondition)
{
    auto const v = boolean_grain_scaling_order(ScalarLaw::degenerate(0.6),
                                               ScalarLaw::degenerate(0.5), 3);
    EXPECT_TRUE(v.yes());
    auto const w = boolean_grain_scaling_order(ScalarLaw::degenerate(0.4),
                                               ScalarLaw::degenerate(0.5), 3);
    EXPECT_EQ(w.ordered, Ordered::undetermined);
}

TEST(Analytic, RejectsUnusableInput)
{
    EXPECT_THROW(boolean_hazard(1, kNone, kBall, {}, DirectionSectors::all()),
                 std::invalid_argument);
    EXPECT_THROW(boolean_hazard(1, kNone, kBall, {0.5, 0.2}, DirectionSectors::all()),
                 std::invalid_argument);
    EXPECT_THROW(boolean_hazard(1, kNone, GaugeBody::segment(Vec{{1, 0}}, 2), {0.5},
                                DirectionSectors::all()),
                 std::invalid_argument);
    EXPECT_THROW(boolean_hazard(1, ScalarLaw::gamma(2, 2), kBall, {0.5},
                                DirectionSectors::all()),
                 std::invalid_argument);
}
