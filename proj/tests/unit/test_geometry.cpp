#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "emptyspace/geometry.hpp"
#include "emptyspace/models.hpp"
#include "emptyspace/rng.hpp"

using namespace emptyspace;
using std::numbers::pi;

namespace {

Vec v2(double x, double y) { return Vec{{x, y}}; }

// Euclidean distance from c to the box x + t[-a, a] x [-b, b].
double box_distance(Vec const& x, double t, double a, double b, Vec const& c)
{
    double const dx = std::max(0.0, std::abs(c[0] - x[0]) - t * a);
    double const dy = std::max(0.0, std::abs(c[1] - x[1]) - t * b);
    return std::hypot(dx, dy);
}

}  // namespace

TEST(Gauge, BallIsEuclidean)
{
    auto const b = GaugeBody::ball(1.0, 2);
    EXPECT_DOUBLE_EQ(gauge_distance(b, v2(3, 4)), 5.0);
    EXPECT_DOUBLE_EQ(gauge_distance(GaugeBody::ball(2.0, 2), v2(3, 4)), 2.5);
}

TEST(Gauge, BoxPolygonSegment)
{
    auto const box = GaugeBody::box(v2(1, 2), 2);
    EXPECT_DOUBLE_EQ(box.gauge(v2(2, 1)), 2.0);
    EXPECT_DOUBLE_EQ(box.gauge(v2(-0.5, 3)), 1.5);
    auto const poly = GaugeBody::polygon({v2(1, -2), v2(1, 2), v2(-1, 2), v2(-1, -2)});
    for (auto const& x : {v2(2, 1), v2(-0.5, 3), v2(0.3, -0.1)})
        EXPECT_NEAR(poly.gauge(x), box.gauge(x), 1e-12);
    EXPECT_NEAR(poly.volume(), 8.0, 1e-12);
    auto const seg = GaugeBody::segment(v2(2, 0), 2);
    EXPECT_DOUBLE_EQ(seg.gauge(v2(3, 0)), 1.5);
    EXPECT_TRUE(std::isinf(seg.gauge(v2(1, 0.1))));
    EXPECT_FALSE(seg.full_dimensional());
}

TEST(Gauge, SupportAndVolume)
{
    auto const box = GaugeBody::box(v2(1, 2), 2);
    EXPECT_NEAR(box.support(v2(0.6, 0.8)), 0.6 + 1.6, 1e-12);
    EXPECT_NEAR(box.volume(), 8.0, 1e-12);
    EXPECT_NEAR(box.surface_area(), 12.0, 1e-12);
    EXPECT_NEAR(GaugeBody::ball(1.0, 3).volume(), 4 * pi / 3, 1e-12);
}

TEST(Gauge, GaugeIsSublinear)
{
    // Property: positively homogeneous and subadditive for every body.
    std::vector<GaugeBody> bodies{
        GaugeBody::ball(1.3, 2), GaugeBody::box(v2(0.5, 2), 2),
        GaugeBody::polygon({v2(1, 0), v2(0, 1), v2(-1, 0.5), v2(-0.5, -1)})};
    RandomStream rng(4, 4);
    for (auto const& b : bodies)
    {
        for (int i = 0; i < 500; ++i)
        {
            Vec const x = v2(4 * rng.uniform() - 2, 4 * rng.uniform() - 2);
            Vec const y = v2(4 * rng.uniform() - 2, 4 * rng.uniform() - 2);
            double const s = 3 * rng.uniform();
            EXPECT_NEAR(b.gauge(s * x), s * b.gauge(x), 1e-10);
            EXPECT_LE(b.gauge(x + y), b.gauge(x) + b.gauge(y) + 1e-10);
        }
    }
}

TEST(Gauge, DistanceToBallAgainstBisection)
{
    auto const box = GaugeBody::box(v2(1, 0.5), 2);
    RandomStream rng(6, 1);
    for (int i = 0; i < 200; ++i)
    {
        Vec const x = v2(6 * rng.uniform() - 3, 6 * rng.uniform() - 3);
        Vec const c = v2(6 * rng.uniform() - 3, 6 * rng.uniform() - 3);
        double const r = 0.5 * rng.uniform();
        double lo = 0, hi = 100;
        if (box_distance(x, 0, 1, 0.5, c) <= r)
            hi = 0;
        for (int k = 0; k < 200 && hi > 0; ++k)
        {
            double const mid = 0.5 * (lo + hi);
            (box_distance(x, mid, 1, 0.5, c) <= r ? hi : lo) = mid;
        }
        EXPECT_NEAR(distance_to_ball(box, x, c, r), hi, 1e-8);
        auto const ball = GaugeBody::ball(1.0, 2);
        EXPECT_NEAR(distance_to_ball(ball, x, c, r),
                    std::max(0.0, norm(c - x) - r), 1e-12);
    }
}

TEST(NuMeasure, TotalsAndBallSectors)
{
    EXPECT_NEAR(nu_total(GaugeBody::ball(1.0, 2)), 2 * pi, 1e-12);
    EXPECT_NEAR(nu_total(GaugeBody::ball(1.0, 3)), 4 * pi, 1e-12);
    EXPECT_NEAR(nu_total(GaugeBody::box(v2(1, 2), 2)), 16.0, 1e-12);
    auto const nm = nu_measure(GaugeBody::ball(1.0, 2),
                               DirectionSectors::uniform_angular(4), 0, 1);
    ASSERT_TRUE(nm.exact);
    for (double v : nm.value)
        EXPECT_NEAR(v, pi / 2, 1e-12);
}

TEST(NuMeasure, BoxQuadrantsBySymmetry)
{
    // Face x = a carries <u, n> = a along length 2b: 2ab per face, and the
    // four axis-aligned quadrants each see half of two faces.
    auto const nm = nu_measure(GaugeBody::box(v2(1, 2), 2),
                               DirectionSectors::uniform_angular(4), 400000, 3);
    EXPECT_NEAR(nm.total, 16.0, 1e-9);
    for (std::size_t i = 0; i < nm.value.size(); ++i)
        EXPECT_NEAR(nm.value[i], 4.0, 5 * nm.se[i] + 1e-9);
}

TEST(Sectors, ClassifyAndFractions)
{
    auto const s = DirectionSectors::uniform_angular(4);
    EXPECT_EQ(s.count(), 4);
    EXPECT_EQ(s.classify(v2(1, 0.1)), 0);
    EXPECT_EQ(s.classify(v2(-1, 0.1)), 1);
    EXPECT_EQ(s.classify(v2(-1, -0.1)), 2);
    EXPECT_EQ(s.classify(v2(1, -0.1)), 3);
    auto const h = DirectionSectors::half_space(v2(0, 1));
    EXPECT_EQ(h.classify(v2(0.3, 0.2)), 0);
    EXPECT_EQ(h.classify(v2(0.3, -0.2)), 1);
    EXPECT_NEAR(h.isotropic_fraction(0), 0.5, 1e-12);
    EXPECT_EQ(DirectionSectors::all().count(), 1);
}

TEST(Steiner, BallBodyBallGrain)
{
    auto const r = ScalarLaw::uniform(0.2, 0.6);
    auto const st = steiner_coefficients_ball_grain(GaugeBody::ball(1.0, 2), r);
    // E pi (R + t)^2
    EXPECT_NEAR(st.c[0], pi, 1e-12);
    EXPECT_NEAR(st.c[1], 2 * pi * 0.4, 1e-12);
    EXPECT_NEAR(st.c[2], pi * r.moment(2), 1e-12);
    EXPECT_NEAR(st.value(0.7), pi * (0.49 + 2 * 0.7 * 0.4 + r.moment(2)), 1e-12);
}

TEST(Steiner, BoxBodyMonteCarloFit)
{
    auto const body = GaugeBody::box(v2(1, 0.5), 2);
    auto const r = ScalarLaw::degenerate(0.4);
    SteinerOptions opts;
    opts.method = SteinerMethod::monte_carlo;
    opts.samples = 400000;
    auto const st = steiner_coefficients_ball_grain(body, r, opts);
    EXPECT_FALSE(st.exact);
    EXPECT_NEAR(st.c[0], 2.0, 5 * st.se[0] + 1e-3);
    EXPECT_NEAR(st.c[1], 6.0 * 0.4, 5 * st.se[1] + 1e-3);
    EXPECT_NEAR(st.c[2], pi * 0.16, 5 * st.se[2] + 1e-3);
}

TEST(Contact, EntryTimeForBallBody)
{
    auto const body = GaugeBody::ball(1.0, 2);
    RandomStream rng(12, 0);
    for (int i = 0; i < 300; ++i)
    {
        Vec const z = v2(6 * rng.uniform() - 3, 6 * rng.uniform() - 3);
        double const r = 0.3 * rng.uniform();
        double const a = 2 * pi * rng.uniform();
        Vec const u = v2(std::cos(a), std::sin(a));
        double const zz = dot(z, z);
        double want;
        if (zz <= r * r)
            want = 0;
        else if (dot(z, u) + r > 0)
            want = (zz - r * r) / (2 * (dot(z, u) + r));
        else
            want = INFINITY;
        double const got = entry_time(body, z, r, u);
        if (std::isinf(want))
            EXPECT_TRUE(std::isinf(got) || got > 1e5);
        else
            EXPECT_NEAR(got, want, 1e-9 * (1 + want));
    }
}

TEST(Contact, IndexMatchesBruteForce)
{
    auto const spec = boolean_spec(0.5, ScalarLaw::uniform(0.0, 0.4), 12.0, 2);
    auto const scene = sample_scene(spec, 5);
    for (auto const& body : {GaugeBody::ball(1.0, 2), GaugeBody::box(v2(1, 0.4), 2)})
    {
        ContactIndex idx(scene, body, 2.0);
        RandomStream rng(1, 1);
        for (int i = 0; i < 500; ++i)
        {
            Vec const x = v2(12 * rng.uniform(), 12 * rng.uniform());
            auto const a = idx.query(x);
            auto const b = scene_contact(body, x, scene);
            if (b.distance <= 2.0)
            {
                EXPECT_NEAR(a.distance, b.distance, 1e-9);
                EXPECT_EQ(a.covered, b.covered);
            }
            else
            {
                EXPECT_GT(a.distance, 2.0 - 1e-9);
            }
        }
    }
}

TEST(HalfSpace, EmptyIffNoGrainReaches)
{
    std::vector<Vec> c{v2(0, 0), v2(2, 0)};
    std::vector<double> r{0.5, 0.5};
    EXPECT_TRUE(half_space_empty(c, r, v2(3, 0), v2(1, 0)));
    EXPECT_FALSE(half_space_empty(c, r, v2(2.4, 0), v2(1, 0)));
    EXPECT_TRUE(half_space_empty(c, {}, v2(2.1, 0), v2(1, 0)));
    EXPECT_FALSE(half_space_empty(c, {}, v2(2.0, 0), v2(1, 0)));
}

TEST(ShrinkLemma, RandomInstancesHaveNoViolation)
{
    RandomStream rng(77, 0);
    GaugeBody const bodies[] = {GaugeBody::ball(1.0, 2), GaugeBody::box(v2(0.3, 1.2), 2),
                                GaugeBody::polygon({v2(1, 0), v2(0, 1), v2(-1, 0.5),
                                                    v2(-0.5, -1)})};
    int violations = 0;
    std::vector<Vec> psi;
    for (int s = 0; s < 3000; ++s)
    {
        auto const& body = bodies[s % 3];
        psi.clear();
        int const m = 2 + static_cast<int>(10 * rng.uniform());
        for (int j = 0; j < m; ++j)
            psi.push_back(v2(4 * rng.uniform() - 2, 4 * rng.uniform() - 2));
        auto const res = shrink_preserves_emptiness(
            psi, rng.uniform(), static_cast<std::size_t>(m * rng.uniform()),
            2 * rng.uniform(), sample_nu_direction(body, rng), body);
        violations += res.lhs > res.rhs;
    }
    EXPECT_EQ(violations, 0);
}
