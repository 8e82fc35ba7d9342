#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace emptyspace {

//! Largest spatial dimension supported by the fixed-size vector type.
inline constexpr int kMaxDim = 3;

//---------------------------------------------------------------------------//
/*!
 * Point or displacement in R^d, d <= kMaxDim.
 *
 * Unused trailing components are kept at zero so that norms and dot products
 * need not know the working dimension.
 */
struct Vec
{
    std::array<double, kMaxDim> c{};

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    friend constexpr Vec operator+(Vec a, Vec const& b)
    {
        for (int i = 0; i < kMaxDim; ++i)
            a.c[i] += b.c[i];
        return a;
    }
    friend constexpr Vec operator-(Vec a, Vec const& b)
    {
        for (int i = 0; i < kMaxDim; ++i)
            a.c[i] -= b.c[i];
        return a;
    }
    friend constexpr Vec operator-(Vec a)
    {
        for (auto& x : a.c)
            x = -x;
        return a;
    }
    friend constexpr Vec operator*(double s, Vec a)
    {
        for (auto& x : a.c)
            x *= s;
        return a;
    }
    friend constexpr Vec operator*(Vec a, double s) { return s * a; }
    friend constexpr Vec operator/(Vec a, double s)
    {
        for (auto& x : a.c)
            x /= s;
        return a;
    }
    friend constexpr bool operator==(Vec const&, Vec const&) = default;
};

constexpr double dot(Vec const& a, Vec const& b)
{
    double s = 0;
    for (int i = 0; i < kMaxDim; ++i)
        s += a.c[i] * b.c[i];
    return s;
}

inline double norm(Vec const& a) { return std::sqrt(dot(a, a)); }

//! Volume of the unit ball in R^d (b_0 = 1).
inline double unit_ball_volume(int d)
{
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

//! Angle of the first two components in [0, 2*pi).
inline double planar_angle(Vec const& u)
{
    double a = std::atan2(u[1], u[0]);
    if (a < 0)
        a += 2 * std::numbers::pi;
    if (a >= 2 * std::numbers::pi)
        a = 0;
    return a;
}

}  // namespace emptyspace
