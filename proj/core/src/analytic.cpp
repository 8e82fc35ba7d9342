#include "emptyspace/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <array>
#include <stdexcept>

#include <boost/math/distributions/complement.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "emptyspace/orderings.hpp"
#include "emptyspace/parallel.hpp"

namespace emptyspace {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kChunk = 2048;

// Stream ids of the Monte Carlo paths.
enum : std::uint64_t
{
    kPalmStream = 20,
    kNsOuterStream = 21,
    kNsPoolStream = 22,
    kGpOuterStream = 23,
    kGpPoolStream = 24,
    kLimitStream = 25,
    kVolumeStream = 26
};

void check_grid(std::vector<double> const& t)
{
    if (t.empty())
        throw std::invalid_argument("empty t grid");
    for (std::size_t k = 0; k < t.size(); ++k)
    {
        if (!(t[k] >= 0) || !std::isfinite(t[k]))
            throw std::invalid_argument("t grid values must be finite and "
                                        ">= 0");
        if (k > 0 && !(t[k] > t[k - 1]))
            throw std::invalid_argument("t grid must be strictly increasing");
    }
}

void check_body(GaugeBody const& body, int dim)
{
    if (!body.full_dimensional())
        throw std::invalid_argument("hazard formulas need a full-dimensional "
                                    "gauge body");
    if (body.dim() != dim)
        throw std::invalid_argument("gauge body and model dimensions differ");
}

//! lambda t^{d-1} nu(C) factor: the shared Poisson form, kept in one place so
//! every reduction to it is bitwise identical.
double point_hazard(double rate, double t, int dim, double nu, double factor)
{
    return rate * std::pow(t, dim - 1) * nu * factor;
}

//---------------------------------------------------------------------------//
// Columns
//---------------------------------------------------------------------------//
struct Columns
{
    std::vector<std::string> labels;
    //! sector per column (-1: all directions)
    std::vector<int> sector;
    std::vector<double> nu;
    std::vector<double> frac;
    bool directed = false;
    bool exact = true;
};

Columns make_columns(GaugeBody const& body, DirectionSectors const& sectors,
                     AnalyticOptions const& opts)
{
    Columns c;
    double const total = nu_total(body);
    c.labels.push_back("all");
    c.sector.push_back(-1);
    c.nu.push_back(total);
    c.frac.push_back(1.0);
    if (sectors.kind() == DirectionSectors::Kind::all)
        return c;
    c.directed = true;
    auto const nm = nu_measure(body, sectors, opts.nu_samples, opts.seed);
    c.exact = nm.exact;
    for (int i = 0; i < sectors.count(); ++i)
    {
        double const f = nm.total > 0 ? nm.value[i] / nm.total : 0.0;
        c.labels.push_back(sectors.label(i));
        c.sector.push_back(i);
        c.frac.push_back(f);
        c.nu.push_back(total * f);
    }
    return c;
}

AnalyticHazard empty_curve(std::vector<double> const& t, Columns const& cols)
{
    AnalyticHazard h;
    h.t = t;
    h.labels = cols.labels;
    std::size_t const nc = cols.labels.size();
    h.r.assign(nc, std::vector<double>(t.size(), 0.0));
    h.r_se.assign(nc, std::vector<double>(t.size(), 0.0));
    return h;
}

//! Column 0 as the sum of the sector columns (independent streams).
void sum_sectors(AnalyticHazard& h)
{
    if (h.labels.size() < 2)
        return;
    for (std::size_t k = 0; k < h.t.size(); ++k)
    {
        double r = 0, v = 0;
        for (std::size_t c = 1; c < h.labels.size(); ++c)
        {
            r += h.r[c][k];
            v += h.r_se[c][k] * h.r_se[c][k];
        }
        h.r[0][k] = r;
        h.r_se[0][k] = std::sqrt(v);
    }
}

/*!
 * Fill F, f, mask from r and either an exact survival function or the
 * volume fraction p0 with S = (1 - p0) exp(-int r).
 *
 * Below the first grid point r is taken to grow like t^{d-1} (point grains)
 * or to be flat (ball grains).
 */
template<class Survival>
void finish_curve(AnalyticHazard& h, Survival&& exact_survival, double p0,
                  bool point_grains, int dim)
{
    auto const& t = h.t;
    std::size_t const nt = t.size();
    std::size_t const nc = h.labels.size();
    double const head = point_grains ? 1.0 / dim : 1.0;

    std::vector<double> S(nt);
    double cum = t[0] * head * h.r[0][0];
    for (std::size_t k = 0; k < nt; ++k)
    {
        if (k > 0)
            cum += 0.5 * (h.r[0][k] + h.r[0][k - 1]) * (t[k] - t[k - 1]);
        double const exact = exact_survival(t[k]);
        S[k] = std::isnan(exact) ? (1 - p0) * std::exp(-cum) : exact;
    }

    h.F.assign(nc, std::vector<double>(nt));
    h.F_se.assign(nc, std::vector<double>(nt, kNaN));
    h.f.assign(nc, std::vector<double>(nt));
    h.masked.assign(nt, 0);
    h.r_log = h.r[0];
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t k = 0; k < nt; ++k)
            h.f[c][k] = h.r[c][k] * S[k];
    for (std::size_t k = 0; k < nt; ++k)
    {
        h.F[0][k] = 1 - S[k];
        h.masked[k] = S[k] < kMaskSurvival ? 1 : 0;
    }
    for (std::size_t c = 1; c < nc; ++c)
    {
        double acc = t[0] * head * h.f[c][0];
        for (std::size_t k = 0; k < nt; ++k)
        {
            if (k > 0)
                acc += 0.5 * (h.f[c][k] + h.f[c][k - 1]) * (t[k] - t[k - 1]);
            h.F[c][k] = std::min(acc, h.F[0][k]);
        }
    }
}

void finish_curve(AnalyticHazard& h, double p0, bool point_grains, int dim)
{
    finish_curve(h, [](double) { return kNaN; }, p0, point_grains, dim);
}

//---------------------------------------------------------------------------//
// Direction geometry
//---------------------------------------------------------------------------//
/*!
 * Unit outer normal of B* at u in its boundary. The boundary point of a ball
 * grain with this normal is the contact point for direction u, and the
 * tangential cone T(B, -u) is the half-space {<z, n> >= 0} flipped.
 */
Vec star_normal(GaugeBody const& body, Vec const& u)
{
    if (body.is_ball())
        return u / norm(u);
    return -body.outer_normal(-u);
}

Vec draw_direction(GaugeBody const& body, DirectionSectors const& sectors,
                   int sector, RandomStream& rng)
{
    return sector < 0 ? sample_nu_direction(body, rng)
                      : sample_nu_direction(body, sectors, sector, rng);
}

double min_entry(GaugeBody const& body, GrainSet const& g, Vec const& x,
                 Vec const& u)
{
    double tau = kInfinity;
    for (std::size_t j = 0; j < g.centers.size(); ++j)
        tau = std::min(tau, entry_time(body, g.centers[j] - x, g.radii[j], u));
    return tau;
}

//! Index of the first grid value >= tau: the sample survives at t_k, k < b.
std::size_t bucket(std::vector<double> const& t, double tau)
{
    return static_cast<std::size_t>(
        std::lower_bound(t.begin(), t.end(), tau) - t.begin());
}

//---------------------------------------------------------------------------//
// Palm cluster sampling
//---------------------------------------------------------------------------//
/*!
 * Suffix sums over Palm draws: S[k][p] = sum of R^p over draws whose entry
 * time exceeds t_k, for p = 0..2(d-1).
 */
struct PalmSums
{
    std::vector<std::vector<double>> S;
    std::size_t n = 0;
};

PalmSums palm_sums(ProcessSpec const& spec, GaugeBody const& body,
                   DirectionSectors const& sectors, int sector,
                   std::vector<double> const& t, AnalyticOptions const& opts)
{
    std::size_t const n = opts.inner_samples;
    if (n == 0)
        throw std::invalid_argument("inner_samples must be positive");
    int const dim = spec.dimension;
    int const np = 2 * (dim - 1) + 1;
    std::size_t const nt = t.size();
    PalmSampler const palm(spec);
    bool const points = spec.point_grains();

    std::size_t const nchunks = (n + kChunk - 1) / kChunk;
    // acc[chunk][bucket][p]
    std::vector<std::vector<std::vector<double>>> acc(
        nchunks,
        std::vector<std::vector<double>>(nt + 1, std::vector<double>(np, 0.0)));
    RandomStream const root = RandomStream(opts.seed, kPalmStream)
                                  .substream(static_cast<std::uint64_t>(
                                      sector + 1));
    parallel_for(nchunks, [&](std::size_t ch) {
        RandomStream rng = root.substream(ch);
        PalmCluster work;
        GrainSet g;
        std::size_t const m = std::min(kChunk, n - ch * kChunk);
        for (std::size_t s = 0; s < m; ++s)
        {
            double const R = points ? 0.0 : spec.grain_radius.sample(rng);
            Vec const u = draw_direction(body, sectors, sector, rng);
            Vec const x = points ? Vec{} : R * star_normal(body, u);
            palm.sample_Y0(rng, work, g);
            double const tau = min_entry(body, g, x, u);
            auto& row = acc[ch][bucket(t, tau)];
            double rp = 1;
            for (int p = 0; p < np; ++p)
            {
                row[p] += rp;
                rp *= R;
            }
        }
    });

    PalmSums out;
    out.n = n;
    out.S.assign(nt, std::vector<double>(np, 0.0));
    std::vector<double> run(np, 0.0);
    for (std::size_t b = nt + 1; b-- > 1;)
    {
        for (auto const& chunk : acc)
            for (int p = 0; p < np; ++p)
                run[p] += chunk[b][p];
        out.S[b - 1] = run;
    }
    return out;
}

struct Steiner
{
    SteinerCoefficients coef;
    std::vector<double> moments;  //!< E R^i, i = 0..d-1
    std::vector<char> used;
};

Steiner steiner_for(ProcessSpec const& spec, GaugeBody const& body,
                    AnalyticOptions const& opts)
{
    int const dim = spec.dimension;
    Steiner s;
    s.coef = steiner_coefficients_ball_grain(body, spec.grain_radius,
                                             opts.steiner);
    for (int i = 0; i < dim; ++i)
    {
        double const m = i == 0 ? 1.0 : spec.grain_radius.moment(i);
        s.moments.push_back(m);
        s.used.push_back(s.coef.c[i] > 0 && m > 0 ? 1 : 0);
    }
    return s;
}

struct PalmColumn
{
    std::vector<double> r, se;
    //! [i][k]
    std::vector<std::vector<double>> K, K_se;
};

PalmColumn palm_column(ProcessSpec const& spec, Steiner const& st, PalmSums const& ps, double nu,
                       double frac, std::vector<double> const& t)
{
    int const dim = spec.dimension;
    double const lambda = spec.intensity();
    double const n = static_cast<double>(ps.n);
    std::size_t const nt = t.size();
    PalmColumn out;
    out.r.assign(nt, 0.0);
    out.se.assign(nt, 0.0);
    out.K.assign(dim, std::vector<double>(nt, 0.0));
    out.K_se.assign(dim, std::vector<double>(nt, 0.0));

    for (std::size_t k = 0; k < nt; ++k)
    {
        auto const& S = ps.S[k];
        for (int i = 0; i < dim; ++i)
        {
            if (!st.used[i])
                continue;
            double const mean = S[i] / n / st.moments[i];
            double const m2 = S[2 * i] / n / (st.moments[i] * st.moments[i]);
            out.K[i][k] = frac * mean;
            out.K_se[i][k] = frac * std::sqrt(std::max(0.0, m2 - mean * mean) / n);
        }
        if (spec.point_grains())
        {
            double const p = S[0] / n;
            out.r[k] = point_hazard(lambda, t[k], dim, nu, p);
            out.se[k] = point_hazard(lambda, t[k], dim, nu,
                                     std::sqrt(p * (1 - p) / n));
            continue;
        }
        // Per-draw contribution X = lambda frac sum_i w_i R^i / E R^i.
        std::vector<double> w(dim, 0.0);
        for (int i = 0; i < dim; ++i)
            if (st.used[i])
                w[i] = (dim - i) * std::pow(t[k], dim - i - 1) * st.coef.c[i]
                       / st.moments[i];
        double mean = 0, m2 = 0;
        for (int i = 0; i < dim; ++i)
        {
            mean += w[i] * S[i];
            for (int j = 0; j < dim; ++j)
                m2 += w[i] * w[j] * S[i + j];
        }
        mean /= n;
        m2 /= n;
        out.r[k] = lambda * frac * mean;
        out.se[k] = lambda * frac * std::sqrt(std::max(0.0, m2 - mean * mean) / n);
    }
    return out;
}

AnalyticHazard palm_hazard(ProcessSpec const& spec, GaugeBody const& body,
                           std::vector<double> const& t,
                           DirectionSectors const& sectors,
                           AnalyticOptions const& opts)
{
    spec.validate();
    check_grid(t);
    check_body(body, spec.dimension);
    if (!spec.is_cluster())
        throw std::invalid_argument("Palm cluster hazard needs a cluster-type "
                                    "spec");
    auto const cols = make_columns(body, sectors, opts);
    auto const st = steiner_for(spec, body, opts);
    AnalyticHazard h = empty_curve(t, cols);
    std::size_t const first = cols.directed ? 1 : 0;
    for (std::size_t c = first; c < cols.labels.size(); ++c)
    {
        auto const ps = palm_sums(spec, body, sectors, cols.sector[c], t, opts);
        auto const col
            = palm_column(spec, st, ps, cols.nu[c], cols.frac[c], t);
        h.r[c] = col.r;
        h.r_se[c] = col.se;
    }
    if (cols.directed)
        sum_sectors(h);
    h.method = "semi-MC";
    h.inner_samples = opts.inner_samples;
    h.meta["formula"] = spec.point_grains() ? "palm point-grain"
                                            : "palm K-table";
    if (!spec.point_grains() && !body.is_ball())
        h.meta["direction-split"] = "approximate";
    if (!st.coef.exact)
        h.meta["steiner"] = "monte carlo";
    double const p0 = spec.point_grains()
                          ? 0.0
                          : volume_fraction(spec, opts).value;
    finish_curve(h, p0, spec.point_grains(), spec.dimension);
    return h;
}

//---------------------------------------------------------------------------//
// Noncentral chi-square quadrature (isotropic Gaussian offsets, ball gauge,
// d = 2)
//---------------------------------------------------------------------------//
//! I_0(z) exp(-z)
double bessel_i0_scaled(double z)
{
    if (z < 500)
        return std::exp(-z) * boost::math::cyl_bessel_i(0, z);
    double const iz = 1 / z;
    return (1 + iz * (1.0 / 8 + iz * (9.0 / 128 + iz * 225.0 / 3072)))
           / std::sqrt(2 * std::numbers::pi * z);
}

//! Rice density of |N(m, I_2)| with |m| = nu.
double rice_pdf(double s, double nu)
{
    return s * std::exp(-0.5 * (s - nu) * (s - nu)) * bessel_i0_scaled(s * nu);
}

//! P(|N(m, I_2)| > a) with |m|^2 = nc.
double ncx2_tail(double a, double nc)
{
    double const x = a * a;
    if (nc < 1e-300)
        return std::exp(-0.5 * x);
    boost::math::non_central_chi_squared_distribution<double> dist(2.0, nc);
    return boost::math::cdf(boost::math::complement(dist, x));
}

//! E over s ~ Rice(nu) of h(s).
template<class H>
double rice_expectation(double nu, H&& h)
{
    double const lo = std::max(0.0, nu - 12);
    double const hi = nu + 12;
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double s) { return h(s) * rice_pdf(s, nu); }, lo, hi, 12, 1e-11,
        &err);
}

bool quadrature_path(ClusterPointLaw const& points, GaugeBody const& body,
                     AnalyticOptions const& opts)
{
    return opts.method == InnerMethod::automatic && body.is_ball()
           && body.dim() == 2
           && points.get_if<cluster_points::IsotropicGaussian>() != nullptr;
}

//---------------------------------------------------------------------------//
// Shared (x, u) outer loop with a pooled inner sample of offsets
//---------------------------------------------------------------------------//
/*!
 * For each outer draw o, fill values[o][k] from the surviving fractions of
 * the pooled offsets; `outer` decides what an outer draw is.
 */
struct OuterResult
{
    std::vector<double> mean, se;
};

template<class PerOuter>
OuterResult outer_loop(std::size_t n_outer, std::size_t nt,
                       PerOuter&& per_outer)
{
    if (n_outer < 2)
        throw std::invalid_argument("outer_samples must be >= 2");
    std::vector<std::vector<double>> values(n_outer);
    parallel_for(n_outer, [&](std::size_t o) { values[o] = per_outer(o); });
    OuterResult out;
    out.mean.assign(nt, 0.0);
    out.se.assign(nt, 0.0);
    double const n = static_cast<double>(n_outer);
    for (std::size_t k = 0; k < nt; ++k)
    {
        double m = 0;
        for (auto const& v : values)
            m += v[k];
        m /= n;
        double ss = 0;
        for (auto const& v : values)
            ss += (v[k] - m) * (v[k] - m);
        out.mean[k] = m;
        out.se[k] = std::sqrt(ss / (n - 1) / n);
    }
    return out;
}

std::vector<Vec> offset_pool(ClusterPointLaw const& points, int dim,
                             std::size_t n, std::uint64_t seed,
                             std::uint64_t stream)
{
    if (n == 0)
        throw std::invalid_argument("inner_samples must be positive");
    std::vector<Vec> pool(n);
    std::size_t const nchunks = (n + kChunk - 1) / kChunk;
    RandomStream const root(seed, stream);
    parallel_for(nchunks, [&](std::size_t ch) {
        RandomStream rng = root.substream(ch);
        std::size_t const end = std::min(n, (ch + 1) * kChunk);
        for (std::size_t j = ch * kChunk; j < end; ++j)
            pool[j] = points.sample(rng, dim);
    });
    return pool;
}

//! Fraction of pool offsets y (times `sign`) with y - x outside t_k(u + B).
std::vector<double> survivor_fraction(GaugeBody const& body,
                                      std::vector<Vec> const& pool, double sign,
                                      Vec const& x, Vec const& u,
                                      std::vector<double> const& t)
{
    std::size_t const nt = t.size();
    std::vector<double> counts(nt + 1, 0.0);
    for (auto const& y : pool)
        counts[bucket(t, entry_time(body, sign * y - x, 0.0, u))] += 1;
    std::vector<double> frac(nt);
    double run = 0;
    double const n = static_cast<double>(pool.size());
    for (std::size_t b = nt + 1; b-- > 1;)
    {
        run += counts[b];
        frac[b - 1] = run / n;
    }
    return frac;
}

}  // namespace

//---------------------------------------------------------------------------//
// Boolean and mixed Poisson
//---------------------------------------------------------------------------//
AnalyticHazard boolean_hazard(double lambda, RadiusLaw const& radius,
                              GaugeBody const& body,
                              std::vector<double> const& t,
                              DirectionSectors const& sectors,
                              AnalyticOptions const& opts)
{
    return mixed_poisson_hazard(IntensityLaw::degenerate(lambda), radius, body,
                                t, sectors, opts);
}

AnalyticHazard mixed_poisson_hazard(IntensityLaw const& mixing,
                                    RadiusLaw const& radius,
                                    GaugeBody const& body,
                                    std::vector<double> const& t,
                                    DirectionSectors const& sectors,
                                    AnalyticOptions const& opts)
{
    check_grid(t);
    check_body(body, body.dim());
    if (!(mixing.mean() > 0) || !std::isfinite(mixing.mean()))
        throw std::invalid_argument("intensity must be positive and finite");
    if (!std::isfinite(radius.sup()))
        throw std::invalid_argument("grain radius law must be bounded");
    int const dim = body.dim();
    bool const points = radius.is_zero();
    auto const cols = make_columns(body, sectors, opts);
    AnalyticHazard h = empty_curve(t, cols);

    // H_B(t) = E V_d(X_0 + tB*); point grains skip the Steiner fit.
    SteinerCoefficients st;
    if (points)
    {
        st.dim = dim;
        st.c.assign(dim + 1, 0.0);
        st.c[0] = body.volume();
        st.se.assign(dim + 1, 0.0);
    }
    else
    {
        st = steiner_coefficients_ball_grain(body, radius, opts.steiner);
    }

    for (std::size_t k = 0; k < t.size(); ++k)
    {
        double const H = st.value(t[k]);
        double const ratio = laplace_ratio(mixing, H);
        double dse = 0;
        if (!st.exact)
        {
            for (int i = 0; i < dim; ++i)
            {
                double const term
                    = (dim - i) * std::pow(t[k], dim - i - 1) * st.se[i];
                dse += term * term;
            }
            dse = std::sqrt(dse);
        }
        for (std::size_t c = 0; c < cols.labels.size(); ++c)
        {
            if (points)
            {
                h.r[c][k] = point_hazard(ratio, t[k], dim, cols.nu[c], 1.0);
            }
            else
            {
                h.r[c][k] = ratio * st.derivative(t[k]) * cols.frac[c];
                h.r_se[c][k] = ratio * dse * cols.frac[c];
            }
        }
    }
    bool const exact = st.exact && cols.exact;
    h.method = exact ? "closed" : "semi-MC";
    if (!points && !body.is_ball())
        h.meta["direction-split"] = "approximate";
    if (!st.exact)
        h.meta["steiner"] = "monte carlo";
    finish_curve(
        h, [&](double x) { return laplace(mixing, st.value(x)); }, 0.0,
        points, dim);
    return h;
}

//---------------------------------------------------------------------------//
// Point-grain cluster processes
//---------------------------------------------------------------------------//
AnalyticHazard poisson_cluster_hazard(ProcessSpec const& spec,
                                      GaugeBody const& body,
                                      std::vector<double> const& t,
                                      DirectionSectors const& sectors,
                                      AnalyticOptions const& opts)
{
    if (!spec.point_grains())
        throw std::invalid_argument("poisson_cluster_hazard needs point "
                                    "grains");
    return palm_hazard(spec, body, t, sectors, opts);
}

AnalyticHazard cluster_germ_grain_hazard(ProcessSpec const& spec,
                                         GaugeBody const& body,
                                         std::vector<double> const& t,
                                         DirectionSectors const& sectors,
                                         AnalyticOptions const& opts)
{
    return palm_hazard(spec, body, t, sectors, opts);
}

AnalyticHazard neyman_scott_hazard(double lambda_parent,
                                   ClusterSizeLaw const& size,
                                   ClusterPointLaw const& points,
                                   GaugeBody const& body,
                                   std::vector<double> const& t,
                                   DirectionSectors const& sectors,
                                   AnalyticOptions const& opts)
{
    check_grid(t);
    int const dim = body.dim();
    check_body(body, dim);
    if (!(lambda_parent > 0) || !(size.mean() > 0))
        throw std::invalid_argument("Neyman-Scott needs lambda_parent > 0 and "
                                    "a positive mean cluster size");
    auto const cols = make_columns(body, sectors, opts);
    AnalyticHazard h = empty_curve(t, cols);
    std::size_t const nt = t.size();
    auto const* det = size.get_if<counting::Deterministic>();

    if (det && det->k == 1)
    {
        // g' = 1: the displaced Poisson process.
        for (std::size_t c = 0; c < cols.labels.size(); ++c)
            for (std::size_t k = 0; k < nt; ++k)
                h.r[c][k] = point_hazard(lambda_parent, t[k], dim, cols.nu[c],
                                         1.0);
        h.method = cols.exact ? "closed" : "semi-MC";
    }
    else if (quadrature_path(points, body, opts))
    {
        double const sigma
            = points.get_if<cluster_points::IsotropicGaussian>()->sigma;
        double const rho = body.get_if<gauge_shapes::Ball>()->radius;
        std::vector<double> factor(nt, 0.0);
        parallel_for(nt, [&](std::size_t k) {
            double const a = t[k] * rho / sigma;
            if (a == 0)
            {
                factor[k] = size.pgf_derivative(1.0);
                return;
            }
            factor[k] = rice_expectation(a, [&](double s) {
                double const q = std::clamp(ncx2_tail(a, s * s), 0.0, 1.0);
                return size.pgf_derivative(q);
            });
        });
        for (std::size_t c = 0; c < cols.labels.size(); ++c)
            for (std::size_t k = 0; k < nt; ++k)
                h.r[c][k] = point_hazard(lambda_parent, t[k], dim, cols.nu[c],
                                         factor[k]);
        h.method = "closed";
        h.meta["inner"] = "noncentral chi-square quadrature";
    }
    else
    {
        auto const pool = offset_pool(points, dim, opts.inner_samples,
                                      opts.seed, kNsPoolStream);
        std::size_t const first = cols.directed ? 1 : 0;
        for (std::size_t c = first; c < cols.labels.size(); ++c)
        {
            RandomStream const root
                = RandomStream(opts.seed, kNsOuterStream)
                      .substream(static_cast<std::uint64_t>(cols.sector[c] + 1));
            auto const res = outer_loop(opts.outer_samples, nt, [&](std::size_t o) {
                RandomStream rng = root.substream(o);
                Vec const x = points.sample(rng, dim);
                Vec const u = draw_direction(body, sectors, cols.sector[c], rng);
                auto v = survivor_fraction(body, pool, 1.0, x, u, t);
                for (auto& q : v)
                    q = size.pgf_derivative(q);
                return v;
            });
            for (std::size_t k = 0; k < nt; ++k)
            {
                h.r[c][k] = point_hazard(lambda_parent, t[k], dim, cols.nu[c],
                                         res.mean[k]);
                h.r_se[c][k] = point_hazard(lambda_parent, t[k], dim,
                                            cols.nu[c], res.se[k]);
            }
        }
        if (cols.directed)
            sum_sectors(h);
        h.method = "semi-MC";
        h.inner_samples = opts.inner_samples;
        h.meta["inner"] = "monte carlo";
    }
    finish_curve(h, 0.0, true, dim);
    return h;
}

AnalyticHazard gauss_poisson_hazard(double lambda_parent, double p,
                                    ClusterPointLaw const& secondary,
                                    GaugeBody const& body,
                                    std::vector<double> const& t,
                                    DirectionSectors const& sectors,
                                    AnalyticOptions const& opts)
{
    check_grid(t);
    int const dim = body.dim();
    check_body(body, dim);
    if (!(lambda_parent > 0) || !(p >= 0 && p <= 1))
        throw std::invalid_argument("Gauss-Poisson needs lambda_parent > 0 "
                                    "and p in [0, 1]");
    auto const cols = make_columns(body, sectors, opts);
    AnalyticHazard h = empty_curve(t, cols);
    std::size_t const nt = t.size();

    if (p == 0 || quadrature_path(secondary, body, opts))
    {
        // Both P(Y outside) and P(-Y outside) equal the noncentral tail with
        // the ball center at distance t rho.
        std::vector<double> factor(nt, 1.0);
        if (p > 0)
        {
            double const sigma
                = secondary.get_if<cluster_points::IsotropicGaussian>()->sigma;
            double const rho = body.get_if<gauge_shapes::Ball>()->radius;
            for (std::size_t k = 0; k < nt; ++k)
            {
                double const a = t[k] * rho / sigma;
                double const q = a == 0 ? 1.0 : ncx2_tail(a, a * a);
                factor[k] = (1 - p) + p * (q + q);
            }
        }
        for (std::size_t c = 0; c < cols.labels.size(); ++c)
            for (std::size_t k = 0; k < nt; ++k)
                h.r[c][k] = point_hazard(lambda_parent, t[k], dim, cols.nu[c],
                                         factor[k]);
        h.method = cols.exact ? "closed" : "semi-MC";
    }
    else
    {
        auto const pool = offset_pool(secondary, dim, opts.inner_samples,
                                      opts.seed, kGpPoolStream);
        std::size_t const first = cols.directed ? 1 : 0;
        for (std::size_t c = first; c < cols.labels.size(); ++c)
        {
            RandomStream const root
                = RandomStream(opts.seed, kGpOuterStream)
                      .substream(static_cast<std::uint64_t>(cols.sector[c] + 1));
            // Entries nt..2nt-1 carry the binomial error of the shared pool,
            // which the spread over u does not see (it is nearly zero for
            // isotropic offsets).
            double const n_pool = static_cast<double>(pool.size());
            auto const res = outer_loop(opts.outer_samples, 2 * nt, [&](std::size_t o) {
                RandomStream rng = root.substream(o);
                Vec const u = draw_direction(body, sectors, cols.sector[c], rng);
                auto a = survivor_fraction(body, pool, 1.0, Vec{}, u, t);
                auto const b = survivor_fraction(body, pool, -1.0, Vec{}, u, t);
                a.resize(2 * nt);
                for (std::size_t k = 0; k < nt; ++k)
                {
                    a[nt + k] = p
                                * (std::sqrt(a[k] * (1 - a[k]) / n_pool)
                                   + std::sqrt(b[k] * (1 - b[k]) / n_pool));
                    a[k] = (1 - p) + p * (a[k] + b[k]);
                }
                return a;
            });
            for (std::size_t k = 0; k < nt; ++k)
            {
                double const se = std::hypot(res.se[k], res.mean[nt + k]);
                h.r[c][k] = point_hazard(lambda_parent, t[k], dim, cols.nu[c],
                                         res.mean[k]);
                h.r_se[c][k]
                    = point_hazard(lambda_parent, t[k], dim, cols.nu[c], se);
            }
        }
        if (cols.directed)
            sum_sectors(h);
        h.method = "semi-MC";
        h.inner_samples = opts.inner_samples;
    }
    finish_curve(h, 0.0, true, dim);
    return h;
}

AnalyticHazard analytic_hazard(ProcessSpec const& spec, GaugeBody const& body,
                               std::vector<double> const& t,
                               DirectionSectors const& sectors,
                               AnalyticOptions const& opts)
{
    using namespace processes;
    spec.validate();
    check_body(body, spec.dimension);
    AnalyticHazard h;
    if (auto const* p = spec.get_if<PoissonGerms>())
        h = boolean_hazard(p->lambda, spec.grain_radius, body, t, sectors,
                           opts);
    else if (auto const* m = spec.get_if<MixedPoisson>())
        h = mixed_poisson_hazard(m->mixing, spec.grain_radius, body, t,
                                 sectors, opts);
    else if (!spec.point_grains())
        h = cluster_germ_grain_hazard(spec, body, t, sectors, opts);
    else if (auto const* ns = spec.get_if<NeymanScott>())
        h = neyman_scott_hazard(ns->lambda_parent, ns->size, ns->points, body,
                                t, sectors, opts);
    else if (auto const* gp = spec.get_if<GaussPoisson>())
        h = gauss_poisson_hazard(gp->lambda_parent, gp->p, gp->secondary, body,
                                 t, sectors, opts);
    else
        h = poisson_cluster_hazard(spec, body, t, sectors, opts);
    h.meta["spec"] = spec.describe();
    h.meta["gauge"] = body.describe();
    h.meta["seed"] = std::to_string(opts.seed);
    return h;
}

//---------------------------------------------------------------------------//
// K tables
//---------------------------------------------------------------------------//
KTable k_table(ProcessSpec const& spec, GaugeBody const& body,
               std::vector<double> const& t, DirectionSectors const& sectors,
               AnalyticOptions const& opts)
{
    spec.validate();
    check_grid(t);
    check_body(body, spec.dimension);
    int const dim = spec.dimension;
    auto const cols = make_columns(body, sectors, opts);
    auto const st = steiner_for(spec, body, opts);
    std::size_t const nc = cols.labels.size();
    std::size_t const nt = t.size();

    KTable out;
    out.t = t;
    out.labels = cols.labels;
    out.used = st.used;
    out.K.assign(dim, std::vector<std::vector<double>>(
                          nc, std::vector<double>(nt, 0.0)));
    out.se = out.K;
    if (!spec.is_cluster())
    {
        for (int i = 0; i < dim; ++i)
            if (st.used[i])
                for (std::size_t c = 0; c < nc; ++c)
                    std::fill(out.K[i][c].begin(), out.K[i][c].end(),
                              cols.frac[c]);
        return out;
    }
    out.samples = opts.inner_samples;
    std::size_t const first = cols.directed ? 1 : 0;
    for (std::size_t c = first; c < nc; ++c)
    {
        auto const ps = palm_sums(spec, body, sectors, cols.sector[c], t, opts);
        auto const col
            = palm_column(spec, st, ps, cols.nu[c], cols.frac[c], t);
        for (int i = 0; i < dim; ++i)
        {
            out.K[i][c] = col.K[i];
            out.se[i][c] = col.K_se[i];
        }
    }
    if (cols.directed)
    {
        for (int i = 0; i < dim; ++i)
        {
            for (std::size_t k = 0; k < nt; ++k)
            {
                double v = 0, s2 = 0;
                for (std::size_t c = 1; c < nc; ++c)
                {
                    v += out.K[i][c][k];
                    s2 += out.se[i][c][k] * out.se[i][c][k];
                }
                out.K[i][0][k] = v;
                out.se[i][0][k] = std::sqrt(s2);
            }
        }
    }
    return out;
}

OrderingVerdict k_table_order(KTable const& a, KTable const& b, double slack)
{
    if (a.t != b.t || a.labels != b.labels || a.K.size() != b.K.size())
        throw std::invalid_argument("K tables have different layouts");
    OrderingVerdict v;
    v.order = "K";
    v.method = VerdictMethod::empirical;
    v.ordered = Ordered::yes;
    v.margin = kInfinity;
    v.tested_range_only = true;
    double worst = 0;
    for (std::size_t i = 0; i < a.K.size(); ++i)
    {
        if (!a.used[i] || !b.used[i])
            continue;
        for (std::size_t c = 0; c < a.labels.size(); ++c)
        {
            for (std::size_t k = 0; k < a.t.size(); ++k)
            {
                double const diff = a.K[i][c][k] - b.K[i][c][k];
                double const tol = slack * (a.se[i][c][k] + b.se[i][c][k]);
                if (diff < v.margin)
                    v.margin = diff;
                if (diff < -tol && -diff - tol > worst)
                {
                    worst = -diff - tol;
                    v.ordered = Ordered::no;
                    v.location = a.t[k];
                    v.sector = static_cast<int>(c);
                    v.witness = {a.K[i][c][k], b.K[i][c][k]};
                    v.note = "K_" + std::to_string(i);
                }
            }
        }
    }
    return v;
}

//---------------------------------------------------------------------------//
// Asymptotics
//---------------------------------------------------------------------------//
AsymptoticLimits asymptotic_limits(ProcessSpec const& spec,
                                   GaugeBody const& body,
                                   DirectionSectors const& sectors,
                                   AnalyticOptions const& opts)
{
    using namespace processes;
    spec.validate();
    check_body(body, spec.dimension);
    int const dim = spec.dimension;
    auto const cols = make_columns(body, sectors, opts);
    std::size_t const nc = cols.labels.size();
    bool const points = spec.point_grains();

    AsymptoticLimits out;
    out.labels = cols.labels;
    out.nu = cols.nu;
    out.small_scaled = points;
    out.small_t.assign(nc, 0.0);
    out.small_se.assign(nc, 0.0);
    out.large_t.assign(nc, 0.0);
    out.large_se.assign(nc, 0.0);
    if (!cols.exact)
        out.method = "semi-MC";

    SteinerCoefficients st;
    if (!points)
        st = steiner_for(spec, body, opts).coef;

    // Poisson-type germs: rate at small t is E Lambda (ratio at H(0)), at
    // large t the lower end of the support of Lambda.
    auto poisson_like = [&](double rate_small, double rate_large) {
        for (std::size_t c = 0; c < nc; ++c)
        {
            if (points)
            {
                out.small_t[c] = rate_small * cols.nu[c];
                out.large_t[c] = rate_large * cols.nu[c];
            }
            else
            {
                out.small_t[c] = rate_small * st.c[dim - 1] * cols.frac[c];
                out.large_t[c] = rate_large * dim * st.c[0] * cols.frac[c];
            }
        }
    };
    if (auto const* p = spec.get_if<PoissonGerms>())
    {
        poisson_like(p->lambda, p->lambda);
        return out;
    }
    if (auto const* m = spec.get_if<MixedPoisson>())
    {
        double const h0 = points ? 0.0 : st.c[dim];
        poisson_like(laplace_ratio(m->mixing, h0),
                     laplace_ratio_limit(m->mixing));
        return out;
    }

    double const lambda = spec.intensity();
    if (points)
    {
        double const large = spec.parent_intensity() * spec.prob_nonempty();
        for (std::size_t c = 0; c < nc; ++c)
        {
            out.small_t[c] = lambda * cols.nu[c];
            out.large_t[c] = large * cols.nu[c];
        }
        return out;
    }

    // Ball grains: Monte Carlo over Palm clusters.
    out.method = "semi-MC";
    std::size_t const n = opts.inner_samples;
    double const m_small = spec.grain_radius.moment(dim - 1);
    PalmSampler const palm(spec);
    std::size_t const first = cols.directed ? 1 : 0;
    for (std::size_t c = first; c < nc; ++c)
    {
        std::size_t const nchunks = (n + kChunk - 1) / kChunk;
        // per chunk: sum small, sum small^2, count large
        std::vector<std::array<double, 3>> acc(nchunks, {0.0, 0.0, 0.0});
        RandomStream const root
            = RandomStream(opts.seed, kLimitStream)
                  .substream(static_cast<std::uint64_t>(cols.sector[c] + 1));
        parallel_for(nchunks, [&](std::size_t ch) {
            RandomStream rng = root.substream(ch);
            PalmCluster work;
            GrainSet g;
            std::size_t const m = std::min(kChunk, n - ch * kChunk);
            for (std::size_t s = 0; s < m; ++s)
            {
                double const R = spec.grain_radius.sample(rng);
                Vec const u = draw_direction(body, sectors, cols.sector[c], rng);
                Vec const nrm = star_normal(body, u);
                Vec const x = R * nrm;
                palm.sample_Y0(rng, work, g);
                bool covered = false;
                for (std::size_t j = 0; j < g.centers.size() && !covered; ++j)
                {
                    Vec const d = g.centers[j] - x;
                    covered = dot(d, d) <= g.radii[j] * g.radii[j];
                }
                double const w = covered ? 0.0 : std::pow(R, dim - 1) / m_small;
                acc[ch][0] += w;
                acc[ch][1] += w * w;
                if (half_space_empty(g.centers, g.radii, x, nrm))
                    acc[ch][2] += 1;
            }
        });
        double s1 = 0, s2 = 0, hits = 0;
        for (auto const& a : acc)
        {
            s1 += a[0];
            s2 += a[1];
            hits += a[2];
        }
        double const nd = static_cast<double>(n);
        double const mean = s1 / nd;
        double const p = hits / nd;
        double const small_scale = lambda * st.c[dim - 1] * cols.frac[c];
        double const large_scale = lambda * dim * st.c[0] * cols.frac[c];
        out.small_t[c] = small_scale * mean;
        out.small_se[c]
            = small_scale * std::sqrt(std::max(0.0, s2 / nd - mean * mean) / nd);
        out.large_t[c] = large_scale * p;
        out.large_se[c] = large_scale * std::sqrt(p * (1 - p) / nd);
    }
    if (cols.directed)
    {
        double v1 = 0, e1 = 0, v2 = 0, e2 = 0;
        for (std::size_t c = 1; c < nc; ++c)
        {
            v1 += out.small_t[c];
            e1 += out.small_se[c] * out.small_se[c];
            v2 += out.large_t[c];
            e2 += out.large_se[c] * out.large_se[c];
        }
        out.small_t[0] = v1;
        out.small_se[0] = std::sqrt(e1);
        out.large_t[0] = v2;
        out.large_se[0] = std::sqrt(e2);
    }
    return out;
}

//---------------------------------------------------------------------------//
// Volume fraction
//---------------------------------------------------------------------------//
namespace {

//! Volume of a union of balls: exact when they are pairwise disjoint,
//! hit-or-miss in the bounding box otherwise.
double union_volume(std::vector<Vec> const& c, std::vector<double> const& r,
                    int dim, RandomStream& rng, std::size_t probes)
{
    double const bd = unit_ball_volume(dim);
    double sum = 0;
    for (double x : r)
        sum += bd * std::pow(x, dim);
    bool disjoint = true;
    for (std::size_t i = 0; i < c.size() && disjoint; ++i)
        for (std::size_t j = i + 1; j < c.size() && disjoint; ++j)
        {
            Vec const d = c[i] - c[j];
            double const s = r[i] + r[j];
            disjoint = dot(d, d) >= s * s;
        }
    if (disjoint)
        return sum;

    Vec lo, hi;
    for (int a = 0; a < dim; ++a)
    {
        lo[a] = kInfinity;
        hi[a] = -kInfinity;
    }
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int a = 0; a < dim; ++a)
        {
            lo[a] = std::min(lo[a], c[i][a] - r[i]);
            hi[a] = std::max(hi[a], c[i][a] + r[i]);
        }
    double box = 1;
    for (int a = 0; a < dim; ++a)
        box *= hi[a] - lo[a];
    std::size_t hits = 0;
    for (std::size_t s = 0; s < probes; ++s)
    {
        Vec z;
        for (int a = 0; a < dim; ++a)
            z[a] = lo[a] + (hi[a] - lo[a]) * rng.uniform();
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            Vec const d = z - c[i];
            if (dot(d, d) <= r[i] * r[i])
            {
                ++hits;
                break;
            }
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(probes);
}

}  // namespace

VolumeFraction volume_fraction(ProcessSpec const& spec,
                               AnalyticOptions const& opts)
{
    using namespace processes;
    spec.validate();
    int const dim = spec.dimension;
    double const mean_grain
        = unit_ball_volume(dim) * spec.grain_radius.moment(dim);
    VolumeFraction out;
    if (auto const* p = spec.get_if<PoissonGerms>())
    {
        out.value = -std::expm1(-p->lambda * mean_grain);
        return out;
    }
    if (auto const* m = spec.get_if<MixedPoisson>())
    {
        out.value = 1 - laplace(m->mixing, mean_grain);
        return out;
    }
    if (spec.point_grains())
        return out;

    std::size_t const n = opts.volume_samples;
    if (n < 2)
        throw std::invalid_argument("volume_samples must be >= 2");
    std::size_t const nchunks = (n + kChunk - 1) / kChunk;
    std::vector<std::array<double, 2>> acc(nchunks, {0.0, 0.0});
    RandomStream const root(opts.seed, kVolumeStream);
    parallel_for(nchunks, [&](std::size_t ch) {
        RandomStream rng = root.substream(ch);
        std::vector<Vec> centers;
        std::vector<double> radii;
        std::size_t const m = std::min(kChunk, n - ch * kChunk);
        for (std::size_t s = 0; s < m; ++s)
        {
            sample_typical_cluster(spec, rng, centers);
            radii.resize(centers.size());
            for (auto& r : radii)
                r = spec.grain_radius.sample(rng);
            double const v = union_volume(centers, radii, dim, rng, 256);
            acc[ch][0] += v;
            acc[ch][1] += v * v;
        }
    });
    double s1 = 0, s2 = 0;
    for (auto const& a : acc)
    {
        s1 += a[0];
        s2 += a[1];
    }
    double const nd = static_cast<double>(n);
    double const mean = s1 / nd;
    double const se = std::sqrt(std::max(0.0, s2 / nd - mean * mean) / nd);
    double const lp = spec.parent_intensity();
    out.value = -std::expm1(-lp * mean);
    out.se = lp * std::exp(-lp * mean) * se;
    out.exact = false;
    return out;
}

//---------------------------------------------------------------------------//
OrderingVerdict boolean_grain_scaling_order(RadiusLaw const& r,
                                            RadiusLaw const& r_tilde, int dim)
{
    if (dim < 1)
        throw std::invalid_argument("dimension must be >= 1");
    OrderingVerdict v;
    v.order = "grain-scaling";
    v.law_a = r.describe();
    v.law_b = r_tilde.describe();
    v.method = VerdictMethod::closed_form_condition;
    v.margin = dim == 1 ? 0.0 : kInfinity;
    bool met = true;
    for (int i = 1; i < dim; ++i)
    {
        double const a = r.moment(i);
        double const b = r_tilde.moment(i);
        if (a - b < v.margin)
        {
            v.margin = a - b;
            v.location = i;
            v.witness = {a, b};
        }
        if (a < b - 1e-12 * std::max(std::abs(a), std::abs(b)))
            met = false;
    }
    v.ordered = met ? Ordered::yes : Ordered::undetermined;
    v.note = met ? "sufficient condition met" : "sufficient condition not met";
    if (met)
        v.witness.clear();
    return v;
}

}  // namespace emptyspace
