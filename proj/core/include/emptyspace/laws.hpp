#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "emptyspace/rng.hpp"
#include "emptyspace/vec.hpp"

namespace emptyspace {

class CountingLaw;

namespace counting {
struct Deterministic
{
    int k;
};
struct Poisson
{
    double mean;
};
struct Binomial
{
    int n;
    double p;
};
//! P(k) = binom(k + r - 1, k) p^r (1 - p)^k, k = 0, 1, ...
struct NegativeBinomial
{
    double p;
    double r;
};
//! Values in {1, 2} with P(2) = p
struct GaussPoissonSize
{
    double p;
};
//! Sum of `outer` i.i.d. copies of `inner`
struct Compound
{
    std::shared_ptr<CountingLaw const> outer;
    std::shared_ptr<CountingLaw const> inner;
};
//! Explicit finite support: pmf[k] = P(k)
struct Table
{
    std::vector<double> pmf;
    std::vector<double> cdf;
};
}  // namespace counting

//---------------------------------------------------------------------------//
/*!
 * Law of a random count (cluster size, cluster multiplicity).
 *
 * Every variant knows its probability generating function and its
 * derivative in closed form; pmf tables are produced on demand for
 * variance checks and length-biasing of families without a closed form.
 */
class CountingLaw
{
  public:
    using Variant
        = std::variant<counting::Deterministic, counting::Poisson,
                       counting::Binomial, counting::NegativeBinomial,
                       counting::GaussPoissonSize, counting::Compound,
                       counting::Table>;

    static CountingLaw deterministic(int k);
    static CountingLaw poisson(double mean);
    static CountingLaw binomial(int n, double p);
    static CountingLaw negative_binomial(double p, double r);
    static CountingLaw gauss_poisson(double p);
    static CountingLaw compound(CountingLaw outer, CountingLaw inner);
    static CountingLaw table(std::vector<double> pmf);
    //! Sparse (k, p_k) pairs; probabilities must sum to 1 within 1e-12
    static CountingLaw table(std::vector<std::pair<int, double>> const& pairs);

    Variant const& variant() const { return v_; }
    template<class T>
    T const* get_if() const
    {
        return std::get_if<T>(&v_);
    }

    double pgf(double s) const;
    double pgf_derivative(double s) const;
    double mean() const;
    double variance() const;
    double pmf(int k) const;
    //! P(eta = 0) = g(0)
    double prob_zero() const { return pgf(0.0); }

    //! pmf on 0..K where the tail beyond K has mass below `tail`
    std::vector<double> pmf_table(double tail = 1e-12) const;

    int sample(RandomStream& rng) const;

    std::string describe() const;

  private:
    explicit CountingLaw(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/*!
 * Shifted length-biased law: P(eta_l = k) = (k + 1) P(eta = k + 1) / E[eta].
 *
 * Closed forms are kept where the family is closed under the map (Poisson,
 * negative binomial, binomial, deterministic); other laws become a table
 * truncated at mass 1e-12 and renormalized.
 */
CountingLaw length_biased(CountingLaw const& law);

//---------------------------------------------------------------------------//
namespace scalar {
struct Degenerate
{
    double value;
};
struct Uniform
{
    double lo;
    double hi;
};
//! value_lo w.p. prob_lo, else value_hi
struct TwoPoint
{
    double value_lo;
    double value_hi;
    double prob_lo;
};
//! Density rate^shape x^(shape-1) exp(-rate x) / Gamma(shape)
struct Gamma
{
    double shape;
    double rate;
};
}  // namespace scalar

//---------------------------------------------------------------------------//
/*!
 * Law of a nonnegative real variable: grain radius, random intensity, or
 * cluster scaling factor.
 *
 * Sampling goes through the left-continuous generalized inverse of the
 * distribution function, so two laws driven by the same uniform are
 * monotonically coupled.
 */
class ScalarLaw
{
  public:
    using Variant = std::variant<scalar::Degenerate, scalar::Uniform,
                                 scalar::TwoPoint, scalar::Gamma>;

    static ScalarLaw degenerate(double value);
    static ScalarLaw uniform(double lo, double hi);
    static ScalarLaw two_point(double value_a, double value_b, double prob_a);
    static ScalarLaw gamma(double shape, double rate);

    Variant const& variant() const { return v_; }
    template<class T>
    T const* get_if() const
    {
        return std::get_if<T>(&v_);
    }

    double mean() const;
    double variance() const;
    //! E[X^i]
    double moment(int i) const;
    //! P(X > x)
    double survival(double x) const;
    //! P(X >= x)
    double survival_left(double x) const;
    //! inf{x : P(X <= x) >= u}
    double quantile(double u) const;
    //! Upper end of the support (infinity for Gamma)
    double sup() const;
    //! Lower end of the support
    double inf() const;
    //! Points where the distribution function is not smooth
    std::vector<double> breakpoints() const;
    bool is_zero() const;

    double sample(RandomStream& rng) const;

    std::string describe() const;

  private:
    explicit ScalarLaw(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

using RadiusLaw = ScalarLaw;
using IntensityLaw = ScalarLaw;
using ScaleLaw = ScalarLaw;

//---------------------------------------------------------------------------//
namespace cluster_points {
struct IsotropicGaussian
{
    double sigma;
};
struct UniformBall
{
    double radius;
};
struct UniformBox
{
    Vec half_widths;
};
}  // namespace cluster_points

//! Absolutely continuous law of a cluster point offset.
class ClusterPointLaw
{
  public:
    using Variant
        = std::variant<cluster_points::IsotropicGaussian,
                       cluster_points::UniformBall, cluster_points::UniformBox>;

    static ClusterPointLaw gaussian(double sigma);
    static ClusterPointLaw uniform_ball(double radius);
    static ClusterPointLaw uniform_box(Vec half_widths);

    Variant const& variant() const { return v_; }
    template<class T>
    T const* get_if() const
    {
        return std::get_if<T>(&v_);
    }

    Vec sample(RandomStream& rng, int dim) const;
    //! Radius containing essentially all mass (6 sigma for the Gaussian)
    double extent(int dim) const;

    std::string describe() const;

  private:
    explicit ClusterPointLaw(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace emptyspace
