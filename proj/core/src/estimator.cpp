#include "emptyspace/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "emptyspace/parallel.hpp"

namespace emptyspace {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool directed(DirectionSectors const& s)
{
    return s.kind() != DirectionSectors::Kind::all;
}

// Central differences, one-sided at the ends.
double difference(std::vector<double> const& t, std::vector<double> const& y,
                  std::size_t k)
{
    std::size_t const n = t.size();
    std::size_t const lo = k == 0 ? 0 : k - 1;
    std::size_t const hi = k + 1 == n ? n - 1 : k + 1;
    return (y[hi] - y[lo]) / (t[hi] - t[lo]);
}

std::vector<std::string> column_labels(DirectionSectors const& s)
{
    std::vector<std::string> labels{"all"};
    if (directed(s))
        for (int i = 0; i < s.count(); ++i)
            labels.push_back(s.label(i));
    return labels;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, int n)
{
    if (n < 2 || !(hi > lo))
        throw std::invalid_argument("grid needs n >= 2 and hi > lo");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

void EstimatorConfig::validate(double side, GaugeBody const& body) const
{
    if (t_grid.size() < 3)
        throw std::invalid_argument("t grid needs at least 3 points");
    for (std::size_t k = 0; k < t_grid.size(); ++k)
    {
        if (!(t_grid[k] >= 0) || !std::isfinite(t_grid[k]))
            throw std::invalid_argument("t grid values must be finite and "
                                        ">= 0");
        if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
            throw std::invalid_argument("t grid must be strictly increasing");
    }
    if (!(t_grid.back() * body.circumradius() < side / 4))
        throw std::invalid_argument("t grid exceeds a quarter of the window");
    if (resolution < 32)
        throw std::invalid_argument("query resolution must be >= 32");
    if (replications < 1)
        throw std::invalid_argument("replications must be >= 1");
    if (sectors.kind() == DirectionSectors::Kind::angular && body.dim() != 2)
        throw std::invalid_argument("angular sectors need d = 2");
}

FTable estimate_F(GermGrainScene const& scene, GaugeBody const& body,
                  EstimatorConfig const& config, Vec const& jitter)
{
    config.validate(scene.side, body);
    auto const& t = config.t_grid;
    std::size_t const nt = t.size();
    bool const dir = directed(config.sectors);
    std::size_t const ncol = dir ? 1 + config.sectors.count() : 1;
    int const dim = scene.dim;
    std::size_t const m = static_cast<std::size_t>(config.resolution);
    std::size_t npoints = 1;
    for (int i = 0; i < dim; ++i)
        npoints *= m;

    std::vector<std::vector<std::uint64_t>> counts(
        ncol, std::vector<std::uint64_t>(nt, 0));
    FTable out;
    out.t = t;

    if (!scene.empty())
    {
        ContactIndex index(scene, body, t.back());
        double const h = scene.side / static_cast<double>(m);
        for (std::size_t p = 0; p < npoints; ++p)
        {
            Vec x;
            std::size_t rest = p;
            for (int i = 0; i < dim; ++i)
            {
                x[i] = (static_cast<double>(rest % m) + jitter[i]) * h;
                rest /= m;
            }
            Contact const c = index.query(x);
            if (!(c.distance <= t.back()))
                continue;
            out.ties += c.tie ? 1 : 0;
            auto const k = static_cast<std::size_t>(
                std::lower_bound(t.begin(), t.end(), c.distance) - t.begin());
            ++counts[0][k];
            if (dir && !c.covered)
                ++counts[1 + config.sectors.classify(c.direction)][k];
        }
    }

    out.F.assign(ncol, std::vector<double>(nt, 0.0));
    double const n = static_cast<double>(npoints);
    for (std::size_t c = 0; c < ncol; ++c)
    {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < nt; ++k)
        {
            acc += counts[c][k];
            out.F[c][k] = static_cast<double>(acc) / n;
        }
    }
    return out;
}

FTable estimate_F(GermGrainScene const& scene, GaugeBody const& body,
                  EstimatorConfig const& config, std::uint64_t replication)
{
    RandomStream rng = RandomStream(config.seed, 1).substream(replication);
    Vec jitter;
    for (int i = 0; i < scene.dim; ++i)
        jitter[i] = rng.uniform();
    return estimate_F(scene, body, config, jitter);
}

HazardColumns hazard_from_survival(std::vector<double> const& t,
                                   std::vector<std::vector<double>> const& F)
{
    std::size_t const nt = t.size();
    if (nt < 3)
        throw std::invalid_argument("hazard differencing needs >= 3 grid "
                                    "points");
    if (F.empty())
        throw std::invalid_argument("no F columns");
    for (auto const& col : F)
        if (col.size() != nt)
            throw std::invalid_argument("F column length differs from grid");

    HazardColumns out;
    out.F = F;
    for (auto& col : out.F)
    {
        for (std::size_t k = 0; k < nt; ++k)
        {
            double v = std::clamp(col[k], 0.0, 1.0);
            if (k > 0)
                v = std::max(v, col[k - 1]);
            if (v != col[k])
                ++out.clip_events;
            col[k] = v;
        }
    }

    std::size_t const ncol = out.F.size();
    out.f.assign(ncol, std::vector<double>(nt));
    out.r.assign(ncol, std::vector<double>(nt));
    out.masked.assign(nt, 0);
    out.r_log.assign(nt, 0.0);
    for (std::size_t k = 0; k < nt; ++k)
    {
        double const s = 1 - out.F[0][k];
        out.masked[k] = s < kMaskSurvival ? 1 : 0;
        for (std::size_t c = 0; c < ncol; ++c)
        {
            out.f[c][k] = difference(t, out.F[c], k);
            out.r[c][k] = s > 0 ? out.f[c][k] / s : 0.0;
        }
        std::size_t const lo = k == 0 ? 0 : k - 1;
        std::size_t const hi = k + 1 == nt ? nt - 1 : k + 1;
        double const s_lo = 1 - out.F[0][lo];
        double const s_hi = 1 - out.F[0][hi];
        out.r_log[k] = (s_lo > 0 && s_hi > 0)
                           ? -(std::log(s_hi) - std::log(s_lo)) / (t[hi] - t[lo])
                           : 0.0;
    }
    return out;
}

HazardCurve pool_replications(ProcessSpec const& spec, GaugeBody const& body,
                              EstimatorConfig const& config)
{
    spec.validate();
    config.validate(spec.window, body);
    std::size_t const nrep = static_cast<std::size_t>(config.replications);
    std::vector<FTable> tables(nrep);
    parallel_for(nrep, [&](std::size_t r) {
        auto const scene = sample_scene(spec, config.seed, r);
        tables[r] = estimate_F(scene, body, config, r);
    });

    auto const& t = config.t_grid;
    std::size_t const nt = t.size();
    std::size_t const ncol = tables[0].F.size();
    double const n = static_cast<double>(nrep);

    HazardCurve curve;
    curve.t = t;
    curve.labels = column_labels(config.sectors);
    curve.replications = nrep;

    std::vector<std::vector<double>> mean(ncol, std::vector<double>(nt, 0.0));
    curve.F_se.assign(ncol, std::vector<double>(nt, kNaN));
    for (auto const& tab : tables)
    {
        curve.ties += tab.ties;
        for (std::size_t c = 0; c < ncol; ++c)
            for (std::size_t k = 0; k < nt; ++k)
                mean[c][k] += tab.F[c][k] / n;
    }
    if (nrep >= 2)
    {
        for (std::size_t c = 0; c < ncol; ++c)
        {
            for (std::size_t k = 0; k < nt; ++k)
            {
                double ss = 0;
                for (auto const& tab : tables)
                    ss += (tab.F[c][k] - mean[c][k]) * (tab.F[c][k] - mean[c][k]);
                curve.F_se[c][k] = std::sqrt(ss / (n - 1) / n);
            }
        }
    }

    auto cols = hazard_from_survival(t, mean);
    curve.F = std::move(cols.F);
    curve.f = std::move(cols.f);
    curve.r = std::move(cols.r);
    curve.masked = std::move(cols.masked);
    curve.r_log = std::move(cols.r_log);
    curve.clip_events = cols.clip_events;

    // Delta method for r = f / S with replicate covariance of (f, S).
    curve.r_se.assign(ncol, std::vector<double>(nt, kNaN));
    if (nrep >= 2)
    {
        for (std::size_t k = 0; k < nt; ++k)
        {
            double const s_bar = 1 - curve.F[0][k];
            if (!(s_bar > 0))
                continue;
            for (std::size_t c = 0; c < ncol; ++c)
            {
                double f_bar = 0;
                for (auto const& tab : tables)
                    f_bar += difference(t, tab.F[c], k) / n;
                double vf = 0, vs = 0, cov = 0;
                double const s_mean = 1 - mean[0][k];
                for (auto const& tab : tables)
                {
                    double const df = difference(t, tab.F[c], k) - f_bar;
                    double const ds = (1 - tab.F[0][k]) - s_mean;
                    vf += df * df;
                    vs += ds * ds;
                    cov += df * ds;
                }
                vf /= (n - 1);
                vs /= (n - 1);
                cov /= (n - 1);
                double const r = curve.r[c][k];
                double const var = std::max(0.0, vf - 2 * r * cov + r * r * vs);
                curve.r_se[c][k] = std::sqrt(var / n) / s_bar;
            }
        }
    }

    curve.meta["spec"] = spec.describe();
    curve.meta["gauge"] = body.describe();
    curve.meta["seed"] = std::to_string(config.seed);
    curve.meta["resolution"] = std::to_string(config.resolution);
    curve.meta["replications"] = std::to_string(config.replications);
    return curve;
}

OrderingVerdict empirical_hazard_order(HazardCurve const& a,
                                       HazardCurve const& b, double slack)
{
    if (a.t.size() != b.t.size() || a.labels != b.labels)
        throw std::invalid_argument("hazard curves have different grids");
    for (std::size_t k = 0; k < a.t.size(); ++k)
        if (std::abs(a.t[k] - b.t[k]) > 1e-12 * (1 + std::abs(a.t[k])))
            throw std::invalid_argument("hazard curves have different grids");

    auto se = [](HazardCurve const& h, std::size_t c, std::size_t k) {
        if (h.r_se.empty())
            return 0.0;
        double const v = h.r_se[c][k];
        return std::isfinite(v) ? v : 0.0;
    };

    OrderingVerdict v;
    v.order = "hazard";
    v.method = VerdictMethod::empirical;
    v.ordered = Ordered::yes;
    v.margin = std::numeric_limits<double>::infinity();
    double worst_excess = 0;
    bool any = false;
    for (std::size_t c = 0; c < a.labels.size(); ++c)
    {
        for (std::size_t k = 0; k < a.t.size(); ++k)
        {
            if (a.masked[k] || b.masked[k])
                continue;
            any = true;
            double const diff = a.r[c][k] - b.r[c][k];
            double const tol = slack * (se(a, c, k) + se(b, c, k));
            if (diff < v.margin)
            {
                v.margin = diff;
                if (v.ordered == Ordered::yes)
                {
                    v.location = a.t[k];
                    v.sector = static_cast<int>(c);
                }
            }
            if (diff < -tol && -diff - tol > worst_excess)
            {
                worst_excess = -diff - tol;
                v.ordered = Ordered::no;
                v.location = a.t[k];
                v.sector = static_cast<int>(c);
                v.witness = {a.r[c][k], b.r[c][k]};
            }
        }
    }
    if (!any)
    {
        v.ordered = Ordered::undetermined;
        v.margin = 0;
        v.note = "every grid point is masked";
    }
    else if (v.ordered == Ordered::yes)
    {
        v.tested_range_only = true;
    }
    return v;
}

}  // namespace emptyspace
