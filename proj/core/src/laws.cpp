#include "emptyspace/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace emptyspace {
namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, char const* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<double> convolve(std::vector<double> const& a,
                             std::vector<double> const& b, double tail)
{
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i] == 0.0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    // Trim a negligible tail so repeated powers stay bounded.
    double acc = 0;
    std::size_t keep = out.size();
    while (keep > 1 && acc + out[keep - 1] < 0.1 * tail)
    {
        acc += out[keep - 1];
        --keep;
    }
    out.resize(keep);
    return out;
}

std::vector<double> cdf_of(std::vector<double> const& pmf)
{
    std::vector<double> cdf(pmf.size());
    std::partial_sum(pmf.begin(), pmf.end(), cdf.begin());
    return cdf;
}

// Extends a pmf generated term by term until the cumulative mass reaches
// 1 - tail.
template<class F>
std::vector<double> series_table(F&& term, double mean, double tail)
{
    std::vector<double> pmf;
    double acc = 0;
    for (int k = 0;; ++k)
    {
        double const p = term(k);
        pmf.push_back(p);
        acc += p;
        if (k > mean && 1.0 - acc < tail)
            break;
        if (k > 10'000'000)
            throw std::runtime_error("pmf table does not converge");
    }
    return pmf;
}

}  // namespace

//---------------------------------------------------------------------------//
// CountingLaw
//---------------------------------------------------------------------------//
CountingLaw CountingLaw::deterministic(int k)
{
    require(k >= 0, "deterministic count must be >= 0");
    return CountingLaw(counting::Deterministic{k});
}

CountingLaw CountingLaw::poisson(double mean)
{
    require(mean >= 0 && std::isfinite(mean), "poisson mean must be >= 0");
    return CountingLaw(counting::Poisson{mean});
}

CountingLaw CountingLaw::binomial(int n, double p)
{
    require(n >= 0 && is_probability(p), "binomial needs n >= 0, p in [0,1]");
    return CountingLaw(counting::Binomial{n, p});
}

CountingLaw CountingLaw::negative_binomial(double p, double r)
{
    require(p > 0 && p <= 1 && r > 0 && std::isfinite(r),
            "negative binomial needs p in (0,1], r > 0");
    return CountingLaw(counting::NegativeBinomial{p, r});
}

CountingLaw CountingLaw::gauss_poisson(double p)
{
    require(is_probability(p), "gauss-poisson size needs p in [0,1]");
    return CountingLaw(counting::GaussPoissonSize{p});
}

CountingLaw CountingLaw::compound(CountingLaw outer, CountingLaw inner)
{
    return CountingLaw(counting::Compound{
        std::make_shared<CountingLaw const>(std::move(outer)),
        std::make_shared<CountingLaw const>(std::move(inner))});
}

CountingLaw CountingLaw::table(std::vector<double> pmf)
{
    require(!pmf.empty(), "count table must not be empty");
    double total = 0;
    for (double p : pmf)
    {
        require(p >= 0 && std::isfinite(p), "count table entries must be >= 0");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "count table must sum to 1");
    while (pmf.size() > 1 && pmf.back() == 0.0)
        pmf.pop_back();
    auto cdf = cdf_of(pmf);
    return CountingLaw(counting::Table{std::move(pmf), std::move(cdf)});
}

CountingLaw
CountingLaw::table(std::vector<std::pair<int, double>> const& pairs)
{
    require(!pairs.empty(), "count table must not be empty");
    int kmax = 0;
    for (auto const& [k, p] : pairs)
    {
        require(k >= 0, "count table support must be >= 0");
        kmax = std::max(kmax, k);
    }
    std::vector<double> pmf(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (auto const& [k, p] : pairs)
        pmf[static_cast<std::size_t>(k)] += p;
    return table(std::move(pmf));
}

double CountingLaw::pgf(double s) const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [&](Deterministic const& d) { return std::pow(s, d.k); },
            [&](Poisson const& d) { return std::exp(-d.mean * (1 - s)); },
            [&](Binomial const& d) { return std::pow(1 - d.p + d.p * s, d.n); },
            [&](NegativeBinomial const& d) {
                return std::pow(d.p / (1 - (1 - d.p) * s), d.r);
            },
            [&](GaussPoissonSize const& d) {
                return (1 - d.p) * s + d.p * s * s;
            },
            [&](Compound const& d) { return d.outer->pgf(d.inner->pgf(s)); },
            [&](Table const& d) {
                double acc = 0;
                for (std::size_t k = d.pmf.size(); k-- > 0;)
                    acc = acc * s + d.pmf[k];
                return acc;
            }},
        v_);
}

double CountingLaw::pgf_derivative(double s) const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [&](Deterministic const& d) {
                return d.k == 0 ? 0.0 : d.k * std::pow(s, d.k - 1);
            },
            [&](Poisson const& d) {
                return d.mean * std::exp(-d.mean * (1 - s));
            },
            [&](Binomial const& d) {
                return d.n == 0
                           ? 0.0
                           : d.n * d.p * std::pow(1 - d.p + d.p * s, d.n - 1);
            },
            [&](NegativeBinomial const& d) {
                double const q = 1 - d.p;
                return d.r * q * std::pow(d.p, d.r)
                       * std::pow(1 - q * s, -d.r - 1);
            },
            [&](GaussPoissonSize const& d) { return (1 - d.p) + 2 * d.p * s; },
            [&](Compound const& d) {
                return d.outer->pgf_derivative(d.inner->pgf(s))
                       * d.inner->pgf_derivative(s);
            },
            [&](Table const& d) {
                double acc = 0;
                for (std::size_t k = d.pmf.size(); k-- > 1;)
                    acc = acc * s + static_cast<double>(k) * d.pmf[k];
                return acc;
            }},
        v_);
}

double CountingLaw::mean() const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [](Deterministic const& d) { return double(d.k); },
            [](Poisson const& d) { return d.mean; },
            [](Binomial const& d) { return d.n * d.p; },
            [](NegativeBinomial const& d) { return d.r * (1 - d.p) / d.p; },
            [](GaussPoissonSize const& d) { return 1 + d.p; },
            [](Compound const& d) { return d.outer->mean() * d.inner->mean(); },
            [](Table const& d) {
                double m = 0;
                for (std::size_t k = 0; k < d.pmf.size(); ++k)
                    m += static_cast<double>(k) * d.pmf[k];
                return m;
            }},
        v_);
}

double CountingLaw::variance() const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [](Deterministic const&) { return 0.0; },
            [](Poisson const& d) { return d.mean; },
            [](Binomial const& d) { return d.n * d.p * (1 - d.p); },
            [](NegativeBinomial const& d) {
                return d.r * (1 - d.p) / (d.p * d.p);
            },
            [](GaussPoissonSize const& d) { return d.p * (1 - d.p); },
            [](Compound const& d) {
                double const mi = d.inner->mean();
                return d.outer->mean() * d.inner->variance()
                       + d.outer->variance() * mi * mi;
            },
            [this](Table const& d) {
                double const m = mean();
                double v = 0;
                for (std::size_t k = 0; k < d.pmf.size(); ++k)
                    v += (double(k) - m) * (double(k) - m) * d.pmf[k];
                return v;
            }},
        v_);
}

double CountingLaw::pmf(int k) const
{
    using namespace counting;
    if (k < 0)
        return 0.0;
    return std::visit(
        Overloaded{
            [&](Deterministic const& d) { return k == d.k ? 1.0 : 0.0; },
            [&](Poisson const& d) {
                if (d.mean == 0)
                    return k == 0 ? 1.0 : 0.0;
                return std::exp(k * std::log(d.mean) - d.mean
                                - std::lgamma(k + 1.0));
            },
            [&](Binomial const& d) {
                if (k > d.n)
                    return 0.0;
                if (d.p == 0 || d.p == 1)
                    return (k == (d.p == 0 ? 0 : d.n)) ? 1.0 : 0.0;
                return std::exp(std::lgamma(d.n + 1.0) - std::lgamma(k + 1.0)
                                - std::lgamma(d.n - k + 1.0)
                                + k * std::log(d.p)
                                + (d.n - k) * std::log1p(-d.p));
            },
            [&](NegativeBinomial const& d) {
                if (d.p == 1)
                    return k == 0 ? 1.0 : 0.0;
                return std::exp(std::lgamma(k + d.r) - std::lgamma(d.r)
                                - std::lgamma(k + 1.0) + d.r * std::log(d.p)
                                + k * std::log1p(-d.p));
            },
            [&](GaussPoissonSize const& d) {
                return k == 1 ? 1 - d.p : (k == 2 ? d.p : 0.0);
            },
            [&](Compound const&) {
                auto const t = pmf_table();
                return static_cast<std::size_t>(k) < t.size() ? t[k] : 0.0;
            },
            [&](Table const& d) {
                return static_cast<std::size_t>(k) < d.pmf.size() ? d.pmf[k]
                                                                  : 0.0;
            }},
        v_);
}

std::vector<double> CountingLaw::pmf_table(double tail) const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [&](Deterministic const& d) {
                std::vector<double> t(static_cast<std::size_t>(d.k) + 1, 0.0);
                t.back() = 1.0;
                return t;
            },
            [&](Poisson const& d) {
                return series_table([this](int k) { return pmf(k); }, d.mean,
                                    tail);
            },
            [&](Binomial const& d) {
                std::vector<double> t;
                for (int k = 0; k <= d.n; ++k)
                    t.push_back(pmf(k));
                return t;
            },
            [&](NegativeBinomial const&) {
                return series_table([this](int k) { return pmf(k); }, mean(),
                                    tail);
            },
            [&](GaussPoissonSize const& d) {
                return std::vector<double>{0.0, 1 - d.p, d.p};
            },
            [&](Compound const& d) {
                auto const outer = d.outer->pmf_table(tail);
                auto const inner = d.inner->pmf_table(tail);
                std::vector<double> result{outer[0]};
                std::vector<double> power{1.0};
                for (std::size_t k = 1; k < outer.size(); ++k)
                {
                    power = convolve(power, inner, tail);
                    if (result.size() < power.size())
                        result.resize(power.size(), 0.0);
                    for (std::size_t j = 0; j < power.size(); ++j)
                        result[j] += outer[k] * power[j];
                }
                return result;
            },
            [&](Table const& d) { return d.pmf; }},
        v_);
}

int CountingLaw::sample(RandomStream& rng) const
{
    using namespace counting;
    return std::visit(
        Overloaded{
            [&](Deterministic const& d) { return d.k; },
            [&](Poisson const& d) {
                if (d.mean <= 0)
                    return 0;
                return std::poisson_distribution<int>(d.mean)(rng);
            },
            [&](Binomial const& d) {
                return std::binomial_distribution<int>(d.n, d.p)(rng);
            },
            [&](NegativeBinomial const& d) {
                if (d.p >= 1)
                    return 0;
                double const lambda = std::gamma_distribution<double>(
                    d.r, (1 - d.p) / d.p)(rng);
                if (lambda <= 0)
                    return 0;
                return std::poisson_distribution<int>(lambda)(rng);
            },
            [&](GaussPoissonSize const& d) {
                return rng.uniform() < d.p ? 2 : 1;
            },
            [&](Compound const& d) {
                int const n = d.outer->sample(rng);
                int total = 0;
                for (int i = 0; i < n; ++i)
                    total += d.inner->sample(rng);
                return total;
            },
            [&](Table const& d) {
                double const u = rng.uniform() * d.cdf.back();
                auto it = std::upper_bound(d.cdf.begin(), d.cdf.end(), u);
                if (it == d.cdf.end())
                    --it;
                return static_cast<int>(it - d.cdf.begin());
            }},
        v_);
}

std::string CountingLaw::describe() const
{
    using namespace counting;
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](Deterministic const& d) {
                       os << "Deterministic(" << d.k << ")";
                   },
                   [&](Poisson const& d) { os << "Poisson(" << d.mean << ")"; },
                   [&](Binomial const& d) {
                       os << "Binomial(" << d.n << ", " << d.p << ")";
                   },
                   [&](NegativeBinomial const& d) {
                       os << "NegativeBinomial(" << d.p << ", " << d.r << ")";
                   },
                   [&](GaussPoissonSize const& d) {
                       os << "GaussPoissonSize(" << d.p << ")";
                   },
                   [&](Compound const& d) {
                       os << "Compound(" << d.outer->describe() << ", "
                          << d.inner->describe() << ")";
                   },
                   [&](Table const& d) {
                       os << "Table{";
                       bool first = true;
                       for (std::size_t k = 0; k < d.pmf.size(); ++k)
                       {
                           if (d.pmf[k] == 0)
                               continue;
                           os << (first ? "" : ", ") << k << ": " << d.pmf[k];
                           first = false;
                       }
                       os << "}";
                   }},
               v_);
    return os.str();
}

CountingLaw length_biased(CountingLaw const& law)
{
    using namespace counting;
    double const m = law.mean();
    if (!(m > 0))
        throw std::domain_error("length-biasing needs a positive mean");
    if (law.get_if<Poisson>())
        return law;
    if (auto const* nb = law.get_if<NegativeBinomial>())
        return CountingLaw::negative_binomial(nb->p, nb->r + 1);
    if (auto const* det = law.get_if<Deterministic>())
        return CountingLaw::deterministic(det->k - 1);
    if (auto const* bin = law.get_if<Binomial>())
        return CountingLaw::binomial(bin->n - 1, bin->p);

    auto const pmf = law.pmf_table();
    std::vector<double> biased(pmf.size() > 1 ? pmf.size() - 1 : 1, 0.0);
    double total = 0;
    for (std::size_t k = 1; k < pmf.size(); ++k)
    {
        biased[k - 1] = static_cast<double>(k) * pmf[k] / m;
        total += biased[k - 1];
    }
    for (double& q : biased)
        q /= total;
    return CountingLaw::table(std::move(biased));
}

//---------------------------------------------------------------------------//
// ScalarLaw
//---------------------------------------------------------------------------//
ScalarLaw ScalarLaw::degenerate(double value)
{
    require(value >= 0 && std::isfinite(value), "degenerate value must be >= 0");
    return ScalarLaw(scalar::Degenerate{value});
}

ScalarLaw ScalarLaw::uniform(double lo, double hi)
{
    require(lo >= 0 && hi > lo && std::isfinite(hi),
            "uniform law needs 0 <= lo < hi");
    return ScalarLaw(scalar::Uniform{lo, hi});
}

ScalarLaw ScalarLaw::two_point(double value_a, double value_b, double prob_a)
{
    require(value_a >= 0 && value_b >= 0 && std::isfinite(value_a)
                && std::isfinite(value_b) && is_probability(prob_a),
            "two-point law needs values >= 0 and a probability");
    if (value_a > value_b)
        return ScalarLaw(scalar::TwoPoint{value_b, value_a, 1 - prob_a});
    return ScalarLaw(scalar::TwoPoint{value_a, value_b, prob_a});
}

ScalarLaw ScalarLaw::gamma(double shape, double rate)
{
    require(shape > 0 && rate > 0 && std::isfinite(shape) && std::isfinite(rate),
            "gamma law needs shape > 0 and rate > 0");
    return ScalarLaw(scalar::Gamma{shape, rate});
}

double ScalarLaw::mean() const { return moment(1); }

double ScalarLaw::variance() const
{
    double const m = mean();
    if (auto const* g = get_if<scalar::Gamma>())
        return g->shape / (g->rate * g->rate);
    return std::max(0.0, moment(2) - m * m);
}

double ScalarLaw::moment(int i) const
{
    using namespace scalar;
    return std::visit(
        Overloaded{
            [&](Degenerate const& d) { return std::pow(d.value, i); },
            [&](Uniform const& d) {
                return (std::pow(d.hi, i + 1) - std::pow(d.lo, i + 1))
                       / ((i + 1) * (d.hi - d.lo));
            },
            [&](TwoPoint const& d) {
                return d.prob_lo * std::pow(d.value_lo, i)
                       + (1 - d.prob_lo) * std::pow(d.value_hi, i);
            },
            [&](Gamma const& d) {
                return std::exp(std::lgamma(d.shape + i) - std::lgamma(d.shape))
                       / std::pow(d.rate, i);
            }},
        v_);
}

double ScalarLaw::survival(double x) const
{
    using namespace scalar;
    return std::visit(
        Overloaded{
            [&](Degenerate const& d) { return x < d.value ? 1.0 : 0.0; },
            [&](Uniform const& d) {
                if (x < d.lo)
                    return 1.0;
                if (x >= d.hi)
                    return 0.0;
                return (d.hi - x) / (d.hi - d.lo);
            },
            [&](TwoPoint const& d) {
                if (x < d.value_lo)
                    return 1.0;
                if (x < d.value_hi)
                    return 1 - d.prob_lo;
                return 0.0;
            },
            [&](Gamma const& d) {
                return x <= 0 ? 1.0 : boost::math::gamma_q(d.shape, d.rate * x);
            }},
        v_);
}

double ScalarLaw::survival_left(double x) const
{
    using namespace scalar;
    return std::visit(
        Overloaded{
            [&](Degenerate const& d) { return x <= d.value ? 1.0 : 0.0; },
            [&](Uniform const&) { return survival(x); },
            [&](TwoPoint const& d) {
                if (x <= d.value_lo)
                    return 1.0;
                if (x <= d.value_hi)
                    return 1 - d.prob_lo;
                return 0.0;
            },
            [&](Gamma const&) { return survival(x); }},
        v_);
}

double ScalarLaw::quantile(double u) const
{
    require(u >= 0 && u <= 1, "quantile level must be in [0,1]");
    using namespace scalar;
    return std::visit(
        Overloaded{
            [&](Degenerate const& d) { return d.value; },
            [&](Uniform const& d) { return d.lo + u * (d.hi - d.lo); },
            [&](TwoPoint const& d) {
                return u <= d.prob_lo ? d.value_lo : d.value_hi;
            },
            [&](Gamma const& d) {
                if (u <= 0)
                    return 0.0;
                if (u >= 1)
                    return std::numeric_limits<double>::infinity();
                return boost::math::gamma_p_inv(d.shape, u) / d.rate;
            }},
        v_);
}

double ScalarLaw::sup() const
{
    using namespace scalar;
    return std::visit(
        Overloaded{[](Degenerate const& d) { return d.value; },
                   [](Uniform const& d) { return d.hi; },
                   [](TwoPoint const& d) {
                       return d.prob_lo < 1 ? d.value_hi : d.value_lo;
                   },
                   [](Gamma const&) {
                       return std::numeric_limits<double>::infinity();
                   }},
        v_);
}

double ScalarLaw::inf() const
{
    using namespace scalar;
    return std::visit(
        Overloaded{[](Degenerate const& d) { return d.value; },
                   [](Uniform const& d) { return d.lo; },
                   [](TwoPoint const& d) {
                       return d.prob_lo > 0 ? d.value_lo : d.value_hi;
                   },
                   [](Gamma const&) { return 0.0; }},
        v_);
}

std::vector<double> ScalarLaw::breakpoints() const
{
    using namespace scalar;
    return std::visit(
        Overloaded{[](Degenerate const& d) { return std::vector{d.value}; },
                   [](Uniform const& d) { return std::vector{d.lo, d.hi}; },
                   [](TwoPoint const& d) {
                       return std::vector{d.value_lo, d.value_hi};
                   },
                   [](Gamma const&) { return std::vector{0.0}; }},
        v_);
}

bool ScalarLaw::is_zero() const
{
    auto const* d = get_if<scalar::Degenerate>();
    return d && d->value == 0.0;
}

double ScalarLaw::sample(RandomStream& rng) const
{
    if (auto const* d = get_if<scalar::Degenerate>())
    {
        // Keep stream consumption identical across variants for coupling.
        (void)rng.uniform_open();
        return d->value;
    }
    return quantile(rng.uniform_open());
}

std::string ScalarLaw::describe() const
{
    using namespace scalar;
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](Degenerate const& d) {
                       os << "Degenerate(" << d.value << ")";
                   },
                   [&](Uniform const& d) {
                       os << "Uniform(" << d.lo << ", " << d.hi << ")";
                   },
                   [&](TwoPoint const& d) {
                       os << "TwoPoint(" << d.value_lo << ", " << d.value_hi
                          << ", " << d.prob_lo << ")";
                   },
                   [&](Gamma const& d) {
                       os << "Gamma(" << d.shape << ", " << d.rate << ")";
                   }},
               v_);
    return os.str();
}

//---------------------------------------------------------------------------//
// ClusterPointLaw
//---------------------------------------------------------------------------//
ClusterPointLaw ClusterPointLaw::gaussian(double sigma)
{
    require(sigma > 0 && std::isfinite(sigma), "gaussian sigma must be > 0");
    return ClusterPointLaw(cluster_points::IsotropicGaussian{sigma});
}

ClusterPointLaw ClusterPointLaw::uniform_ball(double radius)
{
    require(radius > 0 && std::isfinite(radius), "ball radius must be > 0");
    return ClusterPointLaw(cluster_points::UniformBall{radius});
}

ClusterPointLaw ClusterPointLaw::uniform_box(Vec half_widths)
{
    return ClusterPointLaw(cluster_points::UniformBox{half_widths});
}

Vec ClusterPointLaw::sample(RandomStream& rng, int dim) const
{
    using namespace cluster_points;
    return std::visit(
        Overloaded{[&](IsotropicGaussian const& g) {
                       Vec v;
                       for (int i = 0; i < dim; ++i)
                           v[i] = g.sigma * rng.normal();
                       return v;
                   },
                   [&](UniformBall const& b) {
                       for (;;)
                       {
                           Vec v;
                           for (int i = 0; i < dim; ++i)
                               v[i] = b.radius * (2 * rng.uniform() - 1);
                           if (dot(v, v) <= b.radius * b.radius)
                               return v;
                       }
                   },
                   [&](UniformBox const& b) {
                       Vec v;
                       for (int i = 0; i < dim; ++i)
                       {
                           require(b.half_widths[i] > 0,
                                   "box half-widths must be > 0");
                           v[i] = b.half_widths[i] * (2 * rng.uniform() - 1);
                       }
                       return v;
                   }},
        v_);
}

double ClusterPointLaw::extent(int dim) const
{
    using namespace cluster_points;
    return std::visit(
        Overloaded{[&](IsotropicGaussian const& g) {
                       return (6.0 + std::sqrt(double(dim))) * g.sigma;
                   },
                   [](UniformBall const& b) { return b.radius; },
                   [](UniformBox const& b) { return norm(b.half_widths); }},
        v_);
}

std::string ClusterPointLaw::describe() const
{
    using namespace cluster_points;
    std::ostringstream os;
    std::visit(Overloaded{[&](IsotropicGaussian const& g) {
                              os << "Gaussian(" << g.sigma << ")";
                          },
                          [&](UniformBall const& b) {
                              os << "UniformBall(" << b.radius << ")";
                          },
                          [&](UniformBox const& b) {
                              os << "UniformBox(" << b.half_widths[0] << ", "
                                 << b.half_widths[1] << ", "
                                 << b.half_widths[2] << ")";
                          }},
               v_);
    return os.str();
}

}  // namespace emptyspace
