#include "emptyspace/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace emptyspace {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(std::string const& where, std::string const& what)
{
    throw ConfigError(where + ": " + what);
}

void only_keys(json const& j, std::string const& where,
               std::set<std::string> const& allowed)
{
    if (!j.is_object())
        fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(where, "unknown field \"" + it.key() + "\"");
}

json const& need(json const& j, std::string const& where, char const* key)
{
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

double number(json const& j, std::string const& where, char const* key)
{
    auto const& v = need(j, where, key);
    if (!v.is_number())
        fail(where, std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

double number_or(json const& j, std::string const& where, char const* key,
                 double fallback)
{
    return j.contains(key) ? number(j, where, key) : fallback;
}

int integer(json const& j, std::string const& where, char const* key)
{
    auto const& v = need(j, where, key);
    if (!v.is_number_integer())
        fail(where, std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::string text(json const& j, std::string const& where, char const* key)
{
    auto const& v = need(j, where, key);
    if (!v.is_string())
        fail(where, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

Vec vec(json const& j, std::string const& where)
{
    if (!j.is_array() || j.empty() || j.size() > kMaxDim)
        fail(where, "expected an array of 1 to 3 numbers");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_number())
            fail(where, "vector entries must be numbers");
        v[i] = j[i].get<double>();
    }
    return v;
}

json vec_json(Vec const& v, int dim)
{
    json a = json::array();
    for (int i = 0; i < dim; ++i)
        a.push_back(v[i]);
    return a;
}

// Library constructors throw std::invalid_argument / domain_error; report
// those as configuration errors at the right place.
template<class F>
auto guarded(std::string const& where, F&& f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (std::exception const& e)
    {
        fail(where, e.what());
    }
}

//---------------------------------------------------------------------------//
// Laws
//---------------------------------------------------------------------------//
CountingLaw counting_from(json const& j, std::string const& where)
{
    std::string const type = text(j, where, "type");
    return guarded(where, [&]() -> CountingLaw {
        if (type == "deterministic")
        {
            only_keys(j, where, {"type", "k"});
            return CountingLaw::deterministic(integer(j, where, "k"));
        }
        if (type == "poisson")
        {
            only_keys(j, where, {"type", "mean"});
            return CountingLaw::poisson(number(j, where, "mean"));
        }
        if (type == "binomial")
        {
            only_keys(j, where, {"type", "n", "p"});
            return CountingLaw::binomial(integer(j, where, "n"),
                                         number(j, where, "p"));
        }
        if (type == "negative_binomial")
        {
            only_keys(j, where, {"type", "p", "r"});
            return CountingLaw::negative_binomial(number(j, where, "p"),
                                                  number(j, where, "r"));
        }
        if (type == "gauss_poisson")
        {
            only_keys(j, where, {"type", "p"});
            return CountingLaw::gauss_poisson(number(j, where, "p"));
        }
        if (type == "compound")
        {
            only_keys(j, where, {"type", "outer", "inner"});
            return CountingLaw::compound(
                counting_from(need(j, where, "outer"), where + ".outer"),
                counting_from(need(j, where, "inner"), where + ".inner"));
        }
        if (type == "table")
        {
            only_keys(j, where, {"type", "pmf"});
            auto const& p = need(j, where, "pmf");
            if (!p.is_array())
                fail(where, "pmf must be an array");
            std::vector<double> pmf;
            for (auto const& x : p)
            {
                if (!x.is_number())
                    fail(where, "pmf entries must be numbers");
                pmf.push_back(x.get<double>());
            }
            return CountingLaw::table(pmf);
        }
        fail(where, "unknown counting law \"" + type + "\"");
    });
}

json counting_json(CountingLaw const& law)
{
    using namespace counting;
    json j;
    if (auto const* d = law.get_if<Deterministic>())
    {
        j["type"] = "deterministic";
        j["k"] = d->k;
    }
    else if (auto const* p = law.get_if<counting::Poisson>())
    {
        j["type"] = "poisson";
        j["mean"] = p->mean;
    }
    else if (auto const* b = law.get_if<Binomial>())
    {
        j["type"] = "binomial";
        j["n"] = b->n;
        j["p"] = b->p;
    }
    else if (auto const* nb = law.get_if<NegativeBinomial>())
    {
        j["type"] = "negative_binomial";
        j["p"] = nb->p;
        j["r"] = nb->r;
    }
    else if (auto const* gp = law.get_if<GaussPoissonSize>())
    {
        j["type"] = "gauss_poisson";
        j["p"] = gp->p;
    }
    else if (auto const* c = law.get_if<Compound>())
    {
        j["type"] = "compound";
        j["outer"] = counting_json(*c->outer);
        j["inner"] = counting_json(*c->inner);
    }
    else
    {
        j["type"] = "table";
        j["pmf"] = law.get_if<Table>()->pmf;
    }
    return j;
}

ScalarLaw scalar_from(json const& j, std::string const& where)
{
    if (j.is_number())
        return guarded(where,
                       [&] { return ScalarLaw::degenerate(j.get<double>()); });
    std::string const type = text(j, where, "type");
    return guarded(where, [&]() -> ScalarLaw {
        if (type == "degenerate")
        {
            only_keys(j, where, {"type", "value"});
            return ScalarLaw::degenerate(number(j, where, "value"));
        }
        if (type == "uniform")
        {
            only_keys(j, where, {"type", "lo", "hi"});
            return ScalarLaw::uniform(number(j, where, "lo"),
                                      number(j, where, "hi"));
        }
        if (type == "two_point")
        {
            only_keys(j, where, {"type", "lo", "hi", "prob_lo"});
            return ScalarLaw::two_point(number(j, where, "lo"),
                                        number(j, where, "hi"),
                                        number(j, where, "prob_lo"));
        }
        if (type == "gamma")
        {
            only_keys(j, where, {"type", "shape", "rate"});
            return ScalarLaw::gamma(number(j, where, "shape"),
                                    number(j, where, "rate"));
        }
        fail(where, "unknown scalar law \"" + type + "\"");
    });
}

json scalar_json(ScalarLaw const& law)
{
    using namespace scalar;
    json j;
    if (auto const* d = law.get_if<Degenerate>())
    {
        j["type"] = "degenerate";
        j["value"] = d->value;
    }
    else if (auto const* u = law.get_if<Uniform>())
    {
        j["type"] = "uniform";
        j["lo"] = u->lo;
        j["hi"] = u->hi;
    }
    else if (auto const* tp = law.get_if<TwoPoint>())
    {
        j["type"] = "two_point";
        j["lo"] = tp->value_lo;
        j["hi"] = tp->value_hi;
        j["prob_lo"] = tp->prob_lo;
    }
    else
    {
        auto const* g = law.get_if<Gamma>();
        j["type"] = "gamma";
        j["shape"] = g->shape;
        j["rate"] = g->rate;
    }
    return j;
}

IntensityLaw mixing_from(json const& j, std::string const& where)
{
    auto law = scalar_from(j, where);
    if (law.get_if<scalar::Uniform>())
        fail(where, "mixing law must be degenerate, gamma or two_point");
    return law;
}

ClusterPointLaw points_from(json const& j, std::string const& where)
{
    std::string const type = text(j, where, "type");
    return guarded(where, [&]() -> ClusterPointLaw {
        if (type == "gaussian")
        {
            only_keys(j, where, {"type", "sigma"});
            return ClusterPointLaw::gaussian(number(j, where, "sigma"));
        }
        if (type == "uniform_ball")
        {
            only_keys(j, where, {"type", "radius"});
            return ClusterPointLaw::uniform_ball(number(j, where, "radius"));
        }
        if (type == "uniform_box")
        {
            only_keys(j, where, {"type", "half_widths"});
            return ClusterPointLaw::uniform_box(
                vec(need(j, where, "half_widths"), where + ".half_widths"));
        }
        fail(where, "unknown cluster point law \"" + type + "\"");
    });
}

json points_json(ClusterPointLaw const& law, int dim)
{
    using namespace cluster_points;
    json j;
    if (auto const* g = law.get_if<IsotropicGaussian>())
    {
        j["type"] = "gaussian";
        j["sigma"] = g->sigma;
    }
    else if (auto const* b = law.get_if<UniformBall>())
    {
        j["type"] = "uniform_ball";
        j["radius"] = b->radius;
    }
    else
    {
        j["type"] = "uniform_box";
        j["half_widths"] = vec_json(law.get_if<UniformBox>()->half_widths, dim);
    }
    return j;
}

//---------------------------------------------------------------------------//
// Models, gauge, sectors
//---------------------------------------------------------------------------//
ProcessSpec spec_from(json const& j, std::string const& where)
{
    std::string const type = text(j, where, "type");
    double const window = number_or(j, where, "window", 20.0);
    int const dim = j.contains("dimension") ? integer(j, where, "dimension") : 2;
    RadiusLaw radius = j.contains("grain_radius")
                           ? scalar_from(j["grain_radius"], where + ".grain_radius")
                           : RadiusLaw::degenerate(0.0);
    std::set<std::string> common{"type", "grain_radius", "window", "dimension"};
    auto allow = [&](std::initializer_list<char const*> extra) {
        auto keys = common;
        for (auto const* k : extra)
            keys.insert(k);
        only_keys(j, where, keys);
    };
    return guarded(where, [&]() -> ProcessSpec {
        if (type == "poisson")
        {
            allow({"lambda"});
            return boolean_spec(number(j, where, "lambda"), radius, window, dim);
        }
        if (type == "neyman_scott")
        {
            allow({"lambda_parent", "cluster_size", "cluster_points"});
            return neyman_scott_spec(
                number(j, where, "lambda_parent"),
                counting_from(need(j, where, "cluster_size"),
                              where + ".cluster_size"),
                points_from(need(j, where, "cluster_points"),
                            where + ".cluster_points"),
                radius, window, dim);
        }
        if (type == "gauss_poisson")
        {
            allow({"lambda_parent", "p", "cluster_points"});
            return gauss_poisson_spec(
                number(j, where, "lambda_parent"), number(j, where, "p"),
                points_from(need(j, where, "cluster_points"),
                            where + ".cluster_points"),
                radius, window, dim);
        }
        if (type == "mixed_poisson")
        {
            allow({"mixing"});
            return mixed_poisson_spec(
                mixing_from(need(j, where, "mixing"), where + ".mixing"),
                radius, window, dim);
        }
        fail(where, "unknown model type \"" + type + "\"");
    });
}

json spec_json(ProcessSpec const& spec)
{
    using namespace processes;
    json j;
    int const dim = spec.dimension;
    if (auto const* p = spec.get_if<PoissonGerms>())
    {
        j["type"] = "poisson";
        j["lambda"] = p->lambda;
    }
    else if (auto const* ns = spec.get_if<NeymanScott>())
    {
        j["type"] = "neyman_scott";
        j["lambda_parent"] = ns->lambda_parent;
        j["cluster_size"] = counting_json(ns->size);
        j["cluster_points"] = points_json(ns->points, dim);
    }
    else if (auto const* gp = spec.get_if<GaussPoisson>())
    {
        j["type"] = "gauss_poisson";
        j["lambda_parent"] = gp->lambda_parent;
        j["p"] = gp->p;
        j["cluster_points"] = points_json(gp->secondary, dim);
    }
    else if (auto const* m = spec.get_if<MixedPoisson>())
    {
        j["type"] = "mixed_poisson";
        j["mixing"] = scalar_json(m->mixing);
    }
    else
    {
        throw ConfigError("generic cluster models have no JSON form");
    }
    j["grain_radius"] = scalar_json(spec.grain_radius);
    j["window"] = spec.window;
    j["dimension"] = dim;
    return j;
}

GaugeBody gauge_from(json const& j, std::string const& where)
{
    std::string const type = text(j, where, "type");
    int const dim = j.contains("dimension") ? integer(j, where, "dimension") : 2;
    return guarded(where, [&]() -> GaugeBody {
        if (type == "ball")
        {
            only_keys(j, where, {"type", "radius", "dimension"});
            return GaugeBody::ball(number_or(j, where, "radius", 1.0), dim);
        }
        if (type == "box")
        {
            only_keys(j, where, {"type", "half_widths", "dimension"});
            return GaugeBody::box(
                vec(need(j, where, "half_widths"), where + ".half_widths"),
                dim);
        }
        if (type == "polygon")
        {
            only_keys(j, where, {"type", "vertices", "dimension"});
            auto const& vs = need(j, where, "vertices");
            if (!vs.is_array())
                fail(where, "vertices must be an array");
            std::vector<Vec> v;
            for (auto const& x : vs)
                v.push_back(vec(x, where + ".vertices"));
            return GaugeBody::polygon(v);
        }
        if (type == "segment")
        {
            only_keys(j, where, {"type", "end", "dimension"});
            return GaugeBody::segment(vec(need(j, where, "end"), where + ".end"),
                                      dim);
        }
        fail(where, "unknown gauge type \"" + type + "\"");
    });
}

json gauge_json(GaugeBody const& body)
{
    using namespace gauge_shapes;
    json j;
    int const dim = body.dim();
    if (auto const* b = body.get_if<Ball>())
    {
        j["type"] = "ball";
        j["radius"] = b->radius;
    }
    else if (auto const* x = body.get_if<Box>())
    {
        j["type"] = "box";
        j["half_widths"] = vec_json(x->half_widths, dim);
    }
    else if (auto const* p = body.get_if<Polygon>())
    {
        j["type"] = "polygon";
        json vs = json::array();
        for (auto const& v : p->vertices)
            vs.push_back(vec_json(v, 2));
        j["vertices"] = vs;
    }
    else
    {
        j["type"] = "segment";
        j["end"] = vec_json(body.get_if<Segment>()->end, dim);
    }
    j["dimension"] = dim;
    return j;
}

DirectionSectors sectors_from(json const& j, std::string const& where)
{
    std::string const type = text(j, where, "type");
    return guarded(where, [&]() -> DirectionSectors {
        if (type == "all")
        {
            only_keys(j, where, {"type"});
            return DirectionSectors::all();
        }
        if (type == "uniform")
        {
            only_keys(j, where, {"type", "count"});
            return DirectionSectors::uniform_angular(integer(j, where, "count"));
        }
        if (type == "angular")
        {
            only_keys(j, where, {"type", "boundaries"});
            auto const& b = need(j, where, "boundaries");
            if (!b.is_array())
                fail(where, "boundaries must be an array");
            std::vector<double> v;
            for (auto const& x : b)
            {
                if (!x.is_number())
                    fail(where, "boundaries must be numbers");
                v.push_back(x.get<double>());
            }
            return DirectionSectors::angular(v);
        }
        if (type == "half_space")
        {
            only_keys(j, where, {"type", "normal"});
            return DirectionSectors::half_space(
                vec(need(j, where, "normal"), where + ".normal"));
        }
        fail(where, "unknown sectors type \"" + type + "\"");
    });
}

json sectors_json(DirectionSectors const& s)
{
    json j;
    switch (s.kind())
    {
        case DirectionSectors::Kind::all:
            j["type"] = "all";
            break;
        case DirectionSectors::Kind::angular:
            j["type"] = "angular";
            j["boundaries"] = s.boundaries();
            break;
        case DirectionSectors::Kind::half_space:
            j["type"] = "half_space";
            j["normal"] = vec_json(s.normal(), kMaxDim);
            break;
    }
    return j;
}

std::vector<double> grid_from(json const& j, std::string const& where)
{
    if (j.is_array())
    {
        std::vector<double> g;
        for (auto const& x : j)
        {
            if (!x.is_number())
                fail(where, "t grid entries must be numbers");
            g.push_back(x.get<double>());
        }
        return g;
    }
    only_keys(j, where, {"from", "to", "points"});
    return guarded(where, [&] {
        return linear_grid(number(j, where, "from"), number(j, where, "to"),
                           integer(j, where, "points"));
    });
}

OrderCheckSpec order_from(json const& j, std::string const& where)
{
    only_keys(j, where, {"order", "a", "b", "dimension"});
    OrderCheckSpec o;
    o.order = text(j, where, "order");
    if (o.order == "lg")
        o.order = "l-g";
    if (o.order == "l-g")
    {
        o.count_a = counting_from(need(j, where, "a"), where + ".a");
        o.count_b = counting_from(need(j, where, "b"), where + ".b");
    }
    else if (o.order == "cum")
    {
        o.scalar_a = mixing_from(need(j, where, "a"), where + ".a");
        o.scalar_b = mixing_from(need(j, where, "b"), where + ".b");
    }
    else if (o.order == "st" || o.order == "grain-scaling")
    {
        o.scalar_a = scalar_from(need(j, where, "a"), where + ".a");
        o.scalar_b = scalar_from(need(j, where, "b"), where + ".b");
    }
    else
    {
        fail(where, "unknown order \"" + o.order + "\"");
    }
    if (j.contains("dimension"))
        o.dimension = integer(j, where, "dimension");
    return o;
}

json order_json(OrderCheckSpec const& o)
{
    json j;
    j["order"] = o.order;
    if (o.count_a)
    {
        j["a"] = counting_json(*o.count_a);
        j["b"] = counting_json(*o.count_b);
    }
    else
    {
        j["a"] = scalar_json(*o.scalar_a);
        j["b"] = scalar_json(*o.scalar_b);
    }
    j["dimension"] = o.dimension;
    return j;
}

std::uint64_t seed_from(json const& v, std::string const& where)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(where, "seed must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

}  // namespace

//---------------------------------------------------------------------------//
std::string to_string(ExperimentKind k)
{
    switch (k)
    {
        case ExperimentKind::estimate:
            return "estimate";
        case ExperimentKind::analytic:
            return "analytic";
        case ExperimentKind::compare:
            return "compare";
        case ExperimentKind::order_check:
            return "order-check";
        case ExperimentKind::asymptotics:
            return "asymptotics";
        case ExperimentKind::reduction_suite:
            return "reduction-suite";
    }
    return "estimate";
}

ExperimentKind parse_experiment_kind(std::string const& s)
{
    for (auto k : {ExperimentKind::estimate, ExperimentKind::analytic,
                   ExperimentKind::compare, ExperimentKind::order_check,
                   ExperimentKind::asymptotics, ExperimentKind::reduction_suite})
    {
        std::string name = to_string(k);
        std::string alt = name;
        for (auto& c : alt)
            if (c == '-')
                c = '_';
        if (s == name || s == alt)
            return k;
    }
    throw ConfigError("unknown experiment kind \"" + s + "\"");
}

std::string ExperimentConfig::model_name(std::size_t i) const
{
    if (i < names.size())
        return names[i];
    return "model" + std::to_string(i);
}

void ExperimentConfig::validate(ExperimentKind k) const
{
    if (kind && *kind != k)
        throw ConfigError("config is for \"" + to_string(*kind)
                          + "\", not \"" + to_string(k) + "\"");
    if (!names.empty() && names.size() != models.size())
        throw ConfigError("names must match models one to one");
    for (std::size_t i = 0; i < models.size(); ++i)
    {
        auto const& m = models[i];
        std::string const where = "models[" + std::to_string(i) + "]";
        guarded(where, [&] {
            m.validate();
            return 0;
        });
        if (m.dimension != gauge.dim())
            throw ConfigError(where + ": dimension differs from the gauge");
    }
    switch (k)
    {
        case ExperimentKind::estimate:
        case ExperimentKind::analytic:
        case ExperimentKind::asymptotics:
            if (models.empty())
                throw ConfigError("at least one model is required");
            break;
        case ExperimentKind::compare:
        {
            if (models.size() != 2)
                throw ConfigError("compare needs exactly two models");
            double const a = models[0].intensity();
            double const b = models[1].intensity();
            if (!(std::abs(a - b) / a < 1e-9))
                throw ConfigError("compared models must have the same germ "
                                  "intensity");
            break;
        }
        case ExperimentKind::order_check:
            if (!order)
                throw ConfigError("order-check needs an \"order\" section");
            break;
        case ExperimentKind::reduction_suite:
            break;
    }
    if (k == ExperimentKind::estimate || k == ExperimentKind::compare)
    {
        EstimatorConfig est = estimator;
        est.sectors = sectors;
        for (std::size_t i = 0; i < models.size(); ++i)
            guarded("estimator", [&] {
                est.validate(models[i].window, gauge);
                return 0;
            });
    }
    if (k == ExperimentKind::analytic && estimator.t_grid.empty())
        throw ConfigError("estimator.t_grid is required");
}

ExperimentConfig parse_config(std::string const& json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    only_keys(j, "config",
              {"kind", "seed", "output", "models", "names", "gauge", "sectors",
               "estimator", "analytic", "order"});
    ExperimentConfig c;
    if (j.contains("kind"))
        c.kind = parse_experiment_kind(text(j, "config", "kind"));
    if (j.contains("seed"))
        c.seed = seed_from(j["seed"], "config.seed");
    if (j.contains("output"))
        c.output = text(j, "config", "output");
    if (j.contains("models"))
    {
        if (!j["models"].is_array())
            fail("config", "models must be an array");
        for (std::size_t i = 0; i < j["models"].size(); ++i)
            c.models.push_back(
                spec_from(j["models"][i], "models[" + std::to_string(i) + "]"));
    }
    if (j.contains("names"))
    {
        if (!j["names"].is_array())
            fail("config", "names must be an array");
        for (auto const& n : j["names"])
        {
            if (!n.is_string())
                fail("config", "names must be strings");
            c.names.push_back(n.get<std::string>());
        }
    }
    if (j.contains("gauge"))
        c.gauge = gauge_from(j["gauge"], "gauge");
    if (j.contains("sectors"))
        c.sectors = sectors_from(j["sectors"], "sectors");
    if (j.contains("estimator"))
    {
        auto const& e = j["estimator"];
        only_keys(e, "estimator", {"t_grid", "resolution", "replications"});
        if (e.contains("t_grid"))
            c.estimator.t_grid = grid_from(e["t_grid"], "estimator.t_grid");
        if (e.contains("resolution"))
            c.estimator.resolution = integer(e, "estimator", "resolution");
        if (e.contains("replications"))
            c.estimator.replications = integer(e, "estimator", "replications");
    }
    if (j.contains("analytic"))
    {
        auto const& a = j["analytic"];
        only_keys(a, "analytic",
                  {"inner_samples", "outer_samples", "volume_samples",
                   "method"});
        auto count = [&](char const* key, std::size_t& out) {
            if (!a.contains(key))
                return;
            int const v = integer(a, "analytic", key);
            if (v < 2)
                fail("analytic", std::string(key) + " must be >= 2");
            out = static_cast<std::size_t>(v);
        };
        count("inner_samples", c.analytic.inner_samples);
        count("outer_samples", c.analytic.outer_samples);
        count("volume_samples", c.analytic.volume_samples);
        if (a.contains("method"))
        {
            std::string const m = text(a, "analytic", "method");
            if (m == "auto")
                c.analytic.method = InnerMethod::automatic;
            else if (m == "monte_carlo")
                c.analytic.method = InnerMethod::monte_carlo;
            else
                fail("analytic", "method must be \"auto\" or \"monte_carlo\"");
        }
    }
    if (j.contains("order"))
        c.order = order_from(j["order"], "order");
    return c;
}

ExperimentConfig load_config(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(ExperimentConfig const& c)
{
    json j;
    if (c.kind)
        j["kind"] = to_string(*c.kind);
    j["seed"] = c.seed;
    j["output"] = c.output;
    json models = json::array();
    for (auto const& m : c.models)
        models.push_back(spec_json(m));
    j["models"] = models;
    if (!c.names.empty())
        j["names"] = c.names;
    j["gauge"] = gauge_json(c.gauge);
    j["sectors"] = sectors_json(c.sectors);
    json e;
    e["t_grid"] = c.estimator.t_grid;
    e["resolution"] = c.estimator.resolution;
    e["replications"] = c.estimator.replications;
    j["estimator"] = e;
    json a;
    a["inner_samples"] = c.analytic.inner_samples;
    a["outer_samples"] = c.analytic.outer_samples;
    a["volume_samples"] = c.analytic.volume_samples;
    a["method"] = c.analytic.method == InnerMethod::automatic ? "auto"
                                                              : "monte_carlo";
    j["analytic"] = a;
    if (c.order)
        j["order"] = order_json(*c.order);
    return j.dump(2) + "\n";
}

std::string serialize_spec(ProcessSpec const& spec)
{
    return spec_json(spec).dump();
}

ProcessSpec parse_spec(std::string const& json_text)
{
    json j;
    try
    {
        j = json::parse(json_text);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return spec_from(j, "model");
}

std::string fnv1a_hex(std::string const& text)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace emptyspace
