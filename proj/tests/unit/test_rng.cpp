#include <cmath>
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include "emptyspace/parallel.hpp"
#include "emptyspace/rng.hpp"

using namespace emptyspace;

TEST(Philox, KnownAnswer)
{
    // Random123 kat_vectors: philox4x32_10, zero counter and key.
    auto const out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);

    auto const pi = Philox4x32::generate(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(pi[0], 0xd16cfe09u);
    EXPECT_EQ(pi[1], 0x94fdccebu);
    EXPECT_EQ(pi[2], 0x5001e420u);
    EXPECT_EQ(pi[3], 0x24126ea1u);
}

TEST(RandomStream, SameAddressSameValues)
{
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int i = 0; i < 100; ++i)
    {
        auto const x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
        EXPECT_NE(x, d());
    }
}

TEST(RandomStream, SubstreamsIndependentOfConsumption)
{
    RandomStream root(5, 1);
    auto const s3 = root.substream(3)();
    RandomStream used(5, 1);
    for (int i = 0; i < 17; ++i)
        used();
    EXPECT_EQ(used.substream(3)(), s3);
    EXPECT_NE(root.substream(4)(), s3);
}

TEST(RandomStream, UniformMoments)
{
    RandomStream rng(1, 2);
    int const n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double const u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(s2 / n, 1.0 / 3, 0.005);
}

TEST(RandomStream, NormalMoments)
{
    RandomStream rng(9, 3);
    int const n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double const z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 4 / std::sqrt(n));
    EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(Parallel, ResultsIndependentOfThreadCount)
{
    auto run = [] {
        std::vector<double> out(1000);
        parallel_for(out.size(), [&](std::size_t i) {
            RandomStream r(11, i);
            out[i] = r.uniform();
        });
        return out;
    };
    auto const a = run();
    setenv("EMPTYSPACE_THREADS", "1", 1);
    auto const b = run();
    unsetenv("EMPTYSPACE_THREADS");
    EXPECT_EQ(a, b);
}

TEST(Parallel, PropagatesExceptions)
{
    EXPECT_THROW(parallel_for(10,
                              [](std::size_t i) {
                                  if (i == 7)
                                      throw std::runtime_error("x");
                              }),
                 std::runtime_error);
}
