#include "emptyspace/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <boost/version.hpp>
#include <nlohmann/json.hpp>

#include "emptyspace/analytic.hpp"
#include "emptyspace/estimator.hpp"
#include "emptyspace/orderings.hpp"
#include "emptyspace/report.hpp"
#include "emptyspace/rng.hpp"

#ifndef EMPTYSPACE_VERSION
#    define EMPTYSPACE_VERSION "0.0.0"
#endif

namespace emptyspace {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string file_stem(std::string name)
{
    for (auto& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-')
            c = '_';
    return name.empty() ? "model" : name;
}

//! t^{1-d} r(t, all) / nu(all) on the unmasked part of a curve.
PlotSeries scaled_series(HazardCurve const& h, int dim, double nu,
                         std::string name)
{
    PlotSeries s;
    s.name = std::move(name);
    s.x = h.t;
    for (std::size_t k = 0; k < h.t.size(); ++k)
    {
        double const y = h.r[0][k] / (std::pow(h.t[k], dim - 1) * nu);
        s.y.push_back(h.masked[k] || h.t[k] == 0 ? NAN : y);
    }
    return s;
}

class Runner
{
  public:
    Runner(ExperimentConfig const& c, RunOptions const& o, RunResult& r)
        : cfg_(c), opts_(o), res_(r), dir_(c.output)
    {
        est_ = cfg_.estimator;
        est_.sectors = cfg_.sectors;
        est_.seed = cfg_.seed;
        an_ = cfg_.analytic;
        an_.seed = cfg_.seed;
        an_.steiner.seed = cfg_.seed;
    }

    void run(ExperimentKind kind)
    {
        fs::create_directories(dir_);
        switch (kind)
        {
            case ExperimentKind::estimate:
                estimate();
                break;
            case ExperimentKind::analytic:
                analytic();
                break;
            case ExperimentKind::compare:
                compare();
                break;
            case ExperimentKind::order_check:
                order_check();
                break;
            case ExperimentKind::asymptotics:
                asymptotics();
                break;
            case ExperimentKind::reduction_suite:
                suite();
                break;
        }
        manifest(kind);
    }

  private:
    ExperimentConfig const& cfg_;
    RunOptions const& opts_;
    RunResult& res_;
    fs::path dir_;
    EstimatorConfig est_;
    AnalyticOptions an_;
    std::vector<std::string> warnings_;

    void say(std::string const& line)
    {
        if (opts_.log)
            *opts_.log << line << '\n';
    }

    void write(std::string const& name, std::string const& text)
    {
        write_text_file((dir_ / name).string(), text);
        res_.artifacts.push_back(name);
    }

    void fail_check(std::string const& what)
    {
        say("FAIL " + what);
        res_.failures.push_back(what);
    }

    void warn_window(ProcessSpec const& spec)
    {
        if (auto w = window_warning(spec, est_.t_grid.back()))
        {
            say("warning: " + *w);
            warnings_.push_back(*w);
        }
    }

    HazardCurve estimated(std::size_t i)
    {
        warn_window(cfg_.models[i]);
        say("estimating " + cfg_.model_name(i) + " ("
            + std::to_string(est_.replications) + " replications)");
        return pool_replications(cfg_.models[i], cfg_.gauge, est_);
    }

    HazardCurve analytic_curve(std::size_t i)
    {
        say("evaluating " + cfg_.model_name(i));
        return analytic_hazard(cfg_.models[i], cfg_.gauge, est_.t_grid,
                               cfg_.sectors, an_);
    }

    void estimate()
    {
        std::vector<HazardCurve> curves;
        for (std::size_t i = 0; i < cfg_.models.size(); ++i)
        {
            curves.push_back(estimated(i));
            write(file_stem(cfg_.model_name(i)) + "_estimate.csv",
                  hazard_csv(curves.back()));
        }
        write("estimate.svg",
              svg_line_plot(hazard_series(curves, cfg_.names), "Estimated hazard",
                            "t", "r(t)"));
    }

    void analytic()
    {
        std::vector<HazardCurve> curves;
        for (std::size_t i = 0; i < cfg_.models.size(); ++i)
        {
            curves.push_back(analytic_curve(i));
            write(file_stem(cfg_.model_name(i)) + "_analytic.csv",
                  hazard_csv(curves.back()));
        }
        write("analytic.svg",
              svg_line_plot(hazard_series(curves, cfg_.names), "Analytic hazard",
                            "t", "r(t)"));
    }

    OrderingVerdict hazard_verdict(HazardCurve const& a, HazardCurve const& b)
    {
        auto v = empirical_hazard_order(a, b, 3);
        v.law_a = cfg_.models[0].describe();
        v.law_b = cfg_.models[1].describe();
        return v;
    }

    void compare()
    {
        auto const a = analytic_curve(0);
        auto const b = analytic_curve(1);
        auto const va = hazard_verdict(a, b);
        write("verdict_analytic.json", verdict_json(va));
        say("analytic: r_A >= r_B: " + to_string(va.ordered));

        auto const ea = estimated(0);
        auto const eb = estimated(1);
        auto const ve = hazard_verdict(ea, eb);
        write("verdict_estimate.json", verdict_json(ve));
        say("estimate: r_A >= r_B: " + to_string(ve.ordered));

        std::string const na = file_stem(cfg_.model_name(0));
        std::string const nb = file_stem(cfg_.model_name(1));
        write(na + "_analytic.csv", hazard_csv(a));
        write(nb + "_analytic.csv", hazard_csv(b));
        write(na + "_estimate.csv", hazard_csv(ea));
        write(nb + "_estimate.csv", hazard_csv(eb));
        write("compare.svg",
              svg_line_plot(hazard_series({a, b, ea, eb},
                                          {na + " analytic", nb + " analytic",
                                           na + " estimate", nb + " estimate"}),
                            "Hazard comparison", "t", "r(t)"));

        if (opts_.check)
        {
            if (!va.yes())
                fail_check("analytic hazards not ordered");
            if (!ve.yes())
                fail_check("estimated hazards not ordered");
        }
    }

    void order_check()
    {
        auto const& o = *cfg_.order;
        OrderingVerdict v;
        if (o.order == "l-g")
        {
            v = lg_order_check(*o.count_a, *o.count_b);
            auto const vr = variance_consistency(*o.count_a, *o.count_b);
            if (vr.applicable)
                say("variance check: " + vr.note);
        }
        else if (o.order == "cum")
        {
            v = cum_order_check(*o.scalar_a, *o.scalar_b);
            auto const vr = variance_consistency(*o.scalar_a, *o.scalar_b);
            if (vr.applicable)
                say("variance check: " + vr.note);
        }
        else if (o.order == "st")
        {
            v = stochastic_scaling_order(*o.scalar_a, *o.scalar_b);
        }
        else
        {
            v = boolean_grain_scaling_order(*o.scalar_a, *o.scalar_b,
                                            o.dimension);
        }
        write("verdict.json", verdict_json(v));
        say(o.order + " " + v.law_a + " vs " + v.law_b + ": "
            + to_string(v.ordered));
        if (opts_.check && !v.yes())
            fail_check("order " + o.order + " not established");
    }

    void asymptotics()
    {
        std::vector<PlotSeries> series;
        for (std::size_t i = 0; i < cfg_.models.size(); ++i)
        {
            auto const& spec = cfg_.models[i];
            std::string const name = file_stem(cfg_.model_name(i));
            auto const lim
                = asymptotic_limits(spec, cfg_.gauge, cfg_.sectors, an_);
            write(name + "_limits.json", asymptotics_json(lim));
            say(name + ": small-t " + format_number(lim.small_t[0])
                + ", large-t " + format_number(lim.large_t[0]));
            if (!est_.t_grid.empty() && spec.point_grains())
            {
                auto const h = analytic_curve(i);
                int const d = spec.dimension;
                series.push_back(scaled_series(h, d, lim.nu[0], name));
                PlotSeries lo{name + " large-t limit",
                              {h.t.front(), h.t.back()},
                              {lim.large_t[0] / lim.nu[0],
                               lim.large_t[0] / lim.nu[0]}};
                series.push_back(lo);
            }
            if (opts_.check)
            {
                for (std::size_t c = 0; c < lim.labels.size(); ++c)
                {
                    bool const finite = std::isfinite(lim.small_t[c])
                                        && std::isfinite(lim.large_t[c]);
                    if (!finite)
                        fail_check(name + ": non-finite limit in column "
                                   + lim.labels[c]);
                    double const slack
                        = 3 * (lim.small_se[c] + lim.large_se[c]);
                    if (finite && spec.point_grains()
                        && lim.small_t[c] < lim.large_t[c] - slack)
                        fail_check(name + ": small-t limit below large-t "
                                   "limit in column " + lim.labels[c]);
                }
            }
        }
        if (!series.empty())
            write("asymptotics.svg",
                  svg_line_plot(series, "Scaled hazard", "t",
                                "t^(1-d) r(t) / nu"));
    }

    void suite()
    {
        auto const checks = reduction_suite(cfg_.seed, opts_.fault);
        for (auto const& c : checks)
        {
            say(std::string(c.passed ? "PASS " : "FAIL ") + c.name + "  "
                + c.detail);
            if (!c.passed)
                res_.failures.push_back(c.name);
        }
        write("suite.json", suite_json(checks));
    }

    void manifest(ExperimentKind kind)
    {
        ordered_json j;
        j["tool"] = "emptyspace";
        j["version"] = EMPTYSPACE_VERSION;
        j["kind"] = to_string(kind);
        j["seed"] = cfg_.seed;
        // The output location is not part of the experiment's identity.
        auto hashed = cfg_;
        hashed.output.clear();
        j["config_hash"] = fnv1a_hex(serialize_config(hashed));
        j["check"] = opts_.check;
        ordered_json libs;
        libs["boost"] = BOOST_LIB_VERSION;
        libs["nlohmann_json"]
            = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "."
              + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "."
              + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
        j["libraries"] = libs;
        j["artifacts"] = res_.artifacts;
        j["warnings"] = warnings_;
        j["failures"] = res_.failures;
        write_text_file((dir_ / "manifest.json").string(), j.dump(2) + "\n");
        res_.artifacts.push_back("manifest.json");
    }
};

}  // namespace

RunResult run_experiment(ExperimentKind kind, ExperimentConfig config,
                         RunOptions const& opts)
{
    RunResult res;
    auto say = [&](std::string const& s) {
        if (opts.log)
            *opts.log << s << '\n';
    };
    if (opts.seed)
        config.seed = *opts.seed;
    if (opts.out)
        config.output = *opts.out;
    if (kind != ExperimentKind::reduction_suite && !opts.fault.empty())
    {
        say("error: --fault only applies to reduction-suite");
        res.exit_code = kExitInvalid;
        return res;
    }
    if (!opts.fault.empty())
    {
        auto const& names = suite_fault_names();
        if (std::find(names.begin(), names.end(), opts.fault) == names.end())
        {
            say("error: unknown fault \"" + opts.fault + "\"");
            res.exit_code = kExitInvalid;
            return res;
        }
    }
    try
    {
        config.validate(kind);
    }
    catch (std::exception const& e)
    {
        say(std::string("error: ") + e.what());
        res.exit_code = kExitInvalid;
        return res;
    }
    config.kind = kind;

    try
    {
        Runner(config, opts, res).run(kind);
    }
    catch (std::invalid_argument const& e)
    {
        say(std::string("error: ") + e.what());
        res.exit_code = kExitInvalid;
        return res;
    }
    catch (std::exception const& e)
    {
        say(std::string("error: ") + e.what());
        res.exit_code = kExitError;
        return res;
    }
    bool const suite_failed = kind == ExperimentKind::reduction_suite
                              && !res.failures.empty();
    if (suite_failed || (opts.check && !res.failures.empty()))
        res.exit_code = kExitCheckFailed;
    return res;
}

//---------------------------------------------------------------------------//
// Reduction suite
//---------------------------------------------------------------------------//
namespace {

class Suite
{
  public:
    Suite(std::uint64_t seed, std::string fault)
        : seed_(seed), fault_(std::move(fault))
    {
        an_.seed = seed;
        an_.steiner.seed = seed;
    }

    std::vector<SuiteCheck> run()
    {
        add("reduction-chain", [&] { return chain(DirectionSectors::all()); });
        add("reduction-chain-sectors",
            [&] { return chain(DirectionSectors::uniform_angular(4)); });
        add("mixed-degenerate", [&] { return mixed_degenerate(); });
        add("ns-quadrature", [&] { return ns_quadrature(); });
        add("gp-quadrature", [&] { return gp_quadrature(); });
        add("germ-grain-det1", [&] { return germ_grain(); });
        add("estimator-boolean-F", [&] { return estimator(); });
        add("limits-bracket", [&] { return limits(); });
        add("volume-fraction", [&] { return volume(); });
        add("shrink-lemma", [&] { return shrink(); });
        return out_;
    }

  private:
    using Outcome = std::pair<bool, std::string>;

    std::uint64_t seed_;
    std::string fault_;
    AnalyticOptions an_;
    std::vector<SuiteCheck> out_;
    GaugeBody body_ = GaugeBody::ball(1.0, 2);

    template<class F>
    void add(std::string name, F&& f)
    {
        SuiteCheck c;
        c.name = std::move(name);
        try
        {
            auto [ok, detail] = f();
            c.passed = ok;
            c.detail = std::move(detail);
        }
        catch (std::exception const& e)
        {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        out_.push_back(std::move(c));
    }

    double bump(char const* name, double factor) const
    {
        return fault_ == name ? factor : 1.0;
    }

    static void scale(HazardCurve& h, double f)
    {
        for (auto& col : h.r)
            for (auto& x : col)
                x *= f;
    }

    static double se_at(HazardCurve const& h, std::size_t c, std::size_t k)
    {
        if (h.r_se.empty() || !std::isfinite(h.r_se[c][k]))
            return 0;
        return h.r_se[c][k];
    }

    //! Largest |a - b| / joint se over unmasked cells; exact cells must match.
    static Outcome agree(HazardCurve const& a, HazardCurve const& b,
                         double sigmas, double rel = 0)
    {
        double worst = 0;
        bool ok = true;
        for (std::size_t c = 0; c < a.r.size(); ++c)
        {
            for (std::size_t k = 0; k < a.t.size(); ++k)
            {
                if (a.masked[k] || b.masked[k])
                    continue;
                double const diff = std::abs(a.r[c][k] - b.r[c][k]);
                double const se = std::hypot(se_at(a, c, k), se_at(b, c, k));
                double const tol
                    = sigmas * se + rel * std::max(std::abs(b.r[c][k]), 1e-300);
                if (diff > tol)
                    ok = false;
                if (se > 0)
                    worst = std::max(worst, diff / se);
                else if (diff > 0)
                    worst = std::max(worst, diff > tol ? INFINITY : 0.0);
            }
        }
        return {ok, "max |diff| / se = " + format_number(worst)};
    }

    static bool identical(HazardCurve const& a, HazardCurve const& b)
    {
        return a.r == b.r;
    }

    Outcome chain(DirectionSectors const& sectors)
    {
        auto const t = linear_grid(0.05, 3.0, 30);
        auto const none = RadiusLaw::degenerate(0);
        auto const pts = ClusterPointLaw::gaussian(0.5);
        double const lambda = 0.1;
        auto b = boolean_hazard(lambda, none, body_, t, sectors, an_);
        auto gp = gauss_poisson_hazard(lambda, 0.0, pts, body_, t, sectors, an_);
        scale(gp, bump("chain", 1 + 1e-12));
        auto const ns = neyman_scott_hazard(
            lambda, CountingLaw::deterministic(1), pts, body_, t, sectors, an_);
        auto const mp = mixed_poisson_hazard(IntensityLaw::degenerate(lambda),
                                             none, body_, t, sectors, an_);
        auto const palm = poisson_cluster_hazard(
            neyman_scott_spec(lambda, CountingLaw::deterministic(1), pts, none),
            body_, t, sectors, an_);
        bool const exact = identical(b, gp) && identical(b, ns)
                           && identical(b, mp);
        auto const [mc_ok, mc_detail] = agree(palm, b, 3);
        std::string detail = std::string("closed forms ")
                             + (exact ? "identical" : "differ") + "; palm "
                             + mc_detail;
        return {exact && mc_ok, detail};
    }

    Outcome mixed_degenerate()
    {
        auto const t = linear_grid(0.0, 2.0, 21);
        auto const grain = RadiusLaw::degenerate(0.3);
        auto const sectors = DirectionSectors::uniform_angular(3);
        auto b = boolean_hazard(0.2, grain, body_, t, sectors, an_);
        auto const m = mixed_poisson_hazard(IntensityLaw::degenerate(0.2), grain,
                                            body_, t, sectors, an_);
        scale(b, bump("mixed", 1.01));
        double worst = 0;
        for (std::size_t c = 0; c < b.r.size(); ++c)
            for (std::size_t k = 0; k < t.size(); ++k)
                worst = std::max({worst, std::abs(b.r[c][k] - m.r[c][k]),
                                  std::abs(b.F[c][k] - m.F[c][k])});
        return {worst <= 1e-12, "max |diff| = " + format_number(worst)};
    }

    Outcome ns_quadrature()
    {
        auto const t = linear_grid(0.1, 3.0, 15);
        auto const size = CountingLaw::poisson(2);
        auto const pts = ClusterPointLaw::gaussian(0.5);
        auto const sectors = DirectionSectors::all();
        auto q = neyman_scott_hazard(0.05, size, pts, body_, t, sectors, an_);
        scale(q, bump("ns-quadrature", 1.05));
        auto mc_opts = an_;
        mc_opts.method = InnerMethod::monte_carlo;
        auto const m
            = neyman_scott_hazard(0.05, size, pts, body_, t, sectors, mc_opts);
        auto const palm = poisson_cluster_hazard(
            neyman_scott_spec(0.05, size, pts, RadiusLaw::degenerate(0)), body_,
            t, sectors, an_);
        auto const [ok1, d1] = agree(q, m, 4);
        auto const [ok2, d2] = agree(q, palm, 4);
        auto const [ok3, d3] = agree(m, palm, 4);
        return {ok1 && ok2 && ok3, "quad/mc " + d1 + "; quad/palm " + d2
                                       + "; mc/palm " + d3};
    }

    Outcome gp_quadrature()
    {
        auto const t = linear_grid(0.1, 3.0, 15);
        auto const pts = ClusterPointLaw::gaussian(0.5);
        auto const sectors = DirectionSectors::uniform_angular(2);
        auto q = gauss_poisson_hazard(0.08, 0.5, pts, body_, t, sectors, an_);
        scale(q, bump("gp-quadrature", 1.05));
        auto mc_opts = an_;
        mc_opts.method = InnerMethod::monte_carlo;
        auto const m
            = gauss_poisson_hazard(0.08, 0.5, pts, body_, t, sectors, mc_opts);
        auto const palm = poisson_cluster_hazard(
            gauss_poisson_spec(0.08, 0.5, pts, RadiusLaw::degenerate(0)), body_,
            t, sectors, an_);
        auto const [ok1, d1] = agree(q, m, 4);
        auto const [ok2, d2] = agree(q, palm, 4);
        return {ok1 && ok2, "quad/mc " + d1 + "; quad/palm " + d2};
    }

    Outcome germ_grain()
    {
        auto const t = linear_grid(0.0, 2.0, 21);
        auto const grain = RadiusLaw::degenerate(0.3);
        auto const sectors = DirectionSectors::uniform_angular(4);
        auto const spec = neyman_scott_spec(0.1, CountingLaw::deterministic(1),
                                            ClusterPointLaw::gaussian(0.5),
                                            grain);
        auto g = cluster_germ_grain_hazard(spec, body_, t, sectors, an_);
        scale(g, bump("germ-grain", 1.02));
        auto const b = boolean_hazard(0.1, grain, body_, t, sectors, an_);
        return agree(g, b, 3, 1e-9);
    }

    Outcome estimator()
    {
        double const lambda = 1, r0 = 0.5;
        auto const spec
            = boolean_spec(lambda, RadiusLaw::degenerate(r0), 20.0, 2);
        EstimatorConfig ec;
        ec.t_grid = linear_grid(0.0, 1.5, 16);
        ec.resolution = 64;
        ec.replications = 20;
        ec.seed = seed_;
        auto const h = pool_replications(spec, body_, ec);
        double const shift = fault_ == "estimator" ? 0.05 : 0.0;
        double worst = 0;
        bool ok = true;
        for (std::size_t k = 0; k < ec.t_grid.size(); ++k)
        {
            double const s = r0 + ec.t_grid[k];
            double const exact = 1 - std::exp(-lambda * M_PI * s * s) + shift;
            double const diff = std::abs(h.F[0][k] - exact);
            double const se = std::isfinite(h.F_se[0][k]) ? h.F_se[0][k] : 0;
            double const tol = std::max(0.01, 4 * se);
            ok = ok && diff <= tol;
            worst = std::max(worst, diff / tol);
        }
        return {ok, "max |dF| / tol = " + format_number(worst)};
    }

    Outcome limits()
    {
        double const sigma = 0.5;
        auto const spec = neyman_scott_spec(0.05, CountingLaw::poisson(2),
                                            ClusterPointLaw::gaussian(sigma),
                                            RadiusLaw::degenerate(0));
        auto lim = asymptotic_limits(spec, body_, DirectionSectors::all(), an_);
        lim.small_t[0] *= bump("limits", 0.97);
        std::vector<double> t{1e-3 * sigma};
        for (double x : linear_grid(0.1, 10.0, 34))
            t.push_back(x);
        auto const h = analytic_hazard(spec, body_, t, DirectionSectors::all(),
                                       an_);
        double const nu = lim.nu[0];
        double const hi = lim.small_t[0] / nu;
        double const lo = lim.large_t[0] / nu;
        bool ok = true;
        double prev = INFINITY;
        for (std::size_t k = 0; k < t.size(); ++k)
        {
            double const y = h.r[0][k] / (t[k] * nu);
            ok = ok && y <= hi * (1 + 1e-9) && y >= lo * (1 - 1e-9)
                 && y <= prev * (1 + 1e-12);
            prev = y;
        }
        double const first = h.r[0][0] / (t[0] * nu);
        ok = ok && std::abs(first - hi) <= 0.01 * hi;
        return {ok, "limits [" + format_number(lo) + ", " + format_number(hi)
                        + "], scaled hazard at smallest t "
                        + format_number(first)};
    }

    Outcome volume()
    {
        auto const grain = RadiusLaw::degenerate(0.3);
        auto const b = volume_fraction(boolean_spec(0.1, grain), an_);
        auto const ns = volume_fraction(
            neyman_scott_spec(0.05, CountingLaw::poisson(2),
                              ClusterPointLaw::gaussian(0.5), grain),
            an_);
        auto const mp = volume_fraction(
            mixed_poisson_spec(IntensityLaw::gamma(2, 20), grain), an_);
        double const vb = b.value * bump("volume", 0.9);
        bool const ok = vb >= ns.value - 3 * ns.se && vb >= mp.value;
        return {ok, "boolean " + format_number(vb) + ", cluster "
                        + format_number(ns.value) + " +- "
                        + format_number(ns.se) + ", mixed "
                        + format_number(mp.value)};
    }

    Outcome shrink()
    {
        RandomStream rng(seed_, 30);
        GaugeBody const bodies[]
            = {GaugeBody::ball(1.0, 2), GaugeBody::box(Vec{{0.5, 1.5}}, 2)};
        std::size_t violations = 0;
        std::size_t const n = 2000;
        std::vector<Vec> psi;
        for (std::size_t s = 0; s < n; ++s)
        {
            auto const& body = bodies[s % 2];
            psi.clear();
            int const m = 2 + static_cast<int>(rng.uniform() * 10);
            for (int j = 0; j < m; ++j)
                psi.push_back(Vec{{4 * rng.uniform() - 2, 4 * rng.uniform() - 2}});
            double const w = rng.uniform();
            auto const i = static_cast<std::size_t>(rng.uniform() * m);
            double const t = 2 * rng.uniform();
            Vec const u = sample_nu_direction(body, rng);
            auto const r = shrink_preserves_emptiness(psi, w, i, t, u, body);
            bool const bad = fault_ == "shrink" ? r.rhs > r.lhs : r.lhs > r.rhs;
            violations += bad;
        }
        return {violations == 0, std::to_string(violations) + " violations in "
                                     + std::to_string(n) + " instances"};
    }
};

}  // namespace

std::vector<std::string> const& suite_fault_names()
{
    static std::vector<std::string> const names{
        "chain",   "mixed",     "ns-quadrature", "gp-quadrature", "germ-grain",
        "estimator", "limits", "volume",        "shrink"};
    return names;
}

std::vector<SuiteCheck> reduction_suite(std::uint64_t seed,
                                        std::string const& fault)
{
    return Suite(seed, fault).run();
}

std::string suite_json(std::vector<SuiteCheck> const& checks)
{
    ordered_json j;
    bool all = true;
    ordered_json arr = ordered_json::array();
    for (auto const& c : checks)
    {
        ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["detail"] = c.detail;
        arr.push_back(e);
        all = all && c.passed;
    }
    j["passed"] = all;
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace emptyspace
