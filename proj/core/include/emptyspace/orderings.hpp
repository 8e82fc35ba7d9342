#pragma once

#include <string>

#include "emptyspace/laws.hpp"
#include "emptyspace/verdict.hpp"

namespace emptyspace {

//! g(s) = E[s^eta]; throws std::domain_error unless 0 <= s <= 1.
double pgf(CountingLaw const& law, double s);
double pgf_derivative(CountingLaw const& law, double s);

//---------------------------------------------------------------------------//
/*!
 * Length-biased pgf order: a <_{l-g} b iff g_a'(s) / E[a] >= g_b'(s) / E[b]
 * for all s in [0, 1].
 *
 * Recognized families are decided by their closed-form conditions (eta = 1
 * against anything, Poisson c <= c~, binomial at equal n with p <= p~,
 * negative binomial at equal r with p >= p~). Everything else is checked on a
 * uniform s grid including both endpoints.
 */
struct LgOptions
{
    int grid = 1001;
    double tolerance = 1e-10;
    bool shortcuts = true;
};

OrderingVerdict lg_order_check(CountingLaw const& a, CountingLaw const& b,
                               LgOptions const& opts = {});

//! E[exp(-s Lambda)] for s >= 0 (Degenerate, Gamma, TwoPoint).
double laplace(IntensityLaw const& law, double s);
//! E[Lambda exp(-s Lambda)] / E[exp(-s Lambda)]
double laplace_ratio(IntensityLaw const& law, double s);
//! Lower end of the support of Lambda, the s -> infinity limit of the ratio
double laplace_ratio_limit(IntensityLaw const& law);

//---------------------------------------------------------------------------//
/*!
 * First cumulant order: a <_{cum} b iff ratio_a(s) >= ratio_b(s), s >= 0.
 *
 * Gamma pairs are decided exactly (alpha >= alpha~ and alpha / beta >=
 * alpha~ / beta~), as is a degenerate law against any law whose mean does
 * not exceed it. Otherwise the ratio is compared on a uniform grid of
 * [0, s_max] and a "yes" only covers that range.
 */
struct CumOptions
{
    double s_max = 50;
    int grid = 2001;
    double tolerance = 1e-10;
    bool shortcuts = true;
};

OrderingVerdict cum_order_check(IntensityLaw const& a, IntensityLaw const& b,
                                CumOptions const& opts = {});

//---------------------------------------------------------------------------//
//! Whether an order found between equal-mean laws agrees with their variances.
struct VarianceReport
{
    bool applicable = false;
    Ordered a_below_b = Ordered::undetermined;
    Ordered b_below_a = Ordered::undetermined;
    double var_a = 0;
    double var_b = 0;
    //! false only if an established order has the larger variance below
    bool consistent = true;
    std::string note;
};

VarianceReport variance_consistency(CountingLaw const& a, CountingLaw const& b,
                                    LgOptions const& opts = {});
VarianceReport variance_consistency(IntensityLaw const& a,
                                    IntensityLaw const& b,
                                    CumOptions const& opts = {});

/*!
 * Usual stochastic order: yes iff P(smaller > x) <= P(larger > x) for all x.
 *
 * Exact for Degenerate, Uniform and TwoPoint (the survival difference is
 * piecewise linear between breakpoints, so one-sided limits there decide
 * it). Laws involving Gamma are compared on a grid up to the 1 - 1e-12
 * quantile. A "no" carries the location of the largest violation.
 */
OrderingVerdict stochastic_scaling_order(ScaleLaw const& smaller,
                                         ScaleLaw const& larger,
                                         int grid = 2001);

}  // namespace emptyspace
