#include "emptyspace/models.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

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

double window_volume(double side, int dim) { return std::pow(side, dim); }

Vec uniform_point(RandomStream& rng, double side, int dim)
{
    Vec x;
    for (int i = 0; i < dim; ++i)
        x[i] = side * rng.uniform();
    return x;
}

Vec wrap(Vec x, double side, int dim)
{
    for (int i = 0; i < dim; ++i)
    {
        x[i] -= side * std::floor(x[i] / side);
        if (x[i] >= side)
            x[i] = 0;
    }
    return x;
}

int poisson_count(RandomStream& rng, double mean)
{
    if (!(mean > 0))
        return 0;
    return std::poisson_distribution<int>(mean)(rng);
}

}  // namespace

//---------------------------------------------------------------------------//
// ProcessSpec
//---------------------------------------------------------------------------//
double ProcessSpec::intensity() const
{
    using namespace processes;
    return std::visit(
        Overloaded{[](PoissonGerms const& p) { return p.lambda; },
                   [](NeymanScott const& p) {
                       return p.lambda_parent * p.size.mean();
                   },
                   [](GaussPoisson const& p) {
                       return p.lambda_parent * (1 + p.p);
                   },
                   [](GenericCluster const& p) {
                       return p.lambda_parent * p.mean_size;
                   },
                   [](MixedPoisson const& p) { return p.mixing.mean(); }},
        process);
}

double ProcessSpec::parent_intensity() const
{
    using namespace processes;
    return std::visit(
        Overloaded{[](PoissonGerms const& p) { return p.lambda; },
                   [](NeymanScott const& p) { return p.lambda_parent; },
                   [](GaussPoisson const& p) { return p.lambda_parent; },
                   [](GenericCluster const& p) { return p.lambda_parent; },
                   [](MixedPoisson const& p) { return p.mixing.mean(); }},
        process);
}

double ProcessSpec::mean_cluster_size() const
{
    return intensity() / parent_intensity();
}

double ProcessSpec::prob_nonempty() const
{
    using namespace processes;
    if (auto const* ns = get_if<NeymanScott>())
        return 1 - ns->size.prob_zero();
    if (auto const* gc = get_if<GenericCluster>())
        return gc->prob_nonempty;
    return 1.0;
}

double ProcessSpec::cluster_extent() const
{
    using namespace processes;
    if (auto const* ns = get_if<NeymanScott>())
        return ns->points.extent(dimension);
    if (auto const* gp = get_if<GaussPoisson>())
        return gp->secondary.extent(dimension);
    if (auto const* gc = get_if<GenericCluster>())
        return gc->extent;
    return 0.0;
}

bool ProcessSpec::is_cluster() const
{
    using namespace processes;
    return get_if<NeymanScott>() || get_if<GaussPoisson>()
           || get_if<GenericCluster>();
}

void ProcessSpec::validate() const
{
    using namespace processes;
    require(window > 0 && std::isfinite(window), "window side must be > 0");
    require(dimension >= 1 && dimension <= kMaxDim,
            "dimension must be in [1, 3]");
    require(grain_radius.sup() < std::numeric_limits<double>::infinity(),
            "grain radius law must be bounded");
    std::visit(
        Overloaded{
            [](PoissonGerms const& p) {
                require(p.lambda > 0 && std::isfinite(p.lambda),
                        "germ intensity must be positive and finite");
            },
            [](NeymanScott const& p) {
                require(p.lambda_parent > 0 && std::isfinite(p.lambda_parent),
                        "parent intensity must be positive and finite");
                require(p.size.mean() > 0 && std::isfinite(p.size.mean()),
                        "mean cluster size must be positive and finite");
            },
            [](GaussPoisson const& p) {
                require(p.lambda_parent > 0 && std::isfinite(p.lambda_parent),
                        "parent intensity must be positive and finite");
                require(p.p >= 0 && p.p <= 1, "p must be in [0, 1]");
            },
            [](GenericCluster const& p) {
                require(p.lambda_parent > 0 && std::isfinite(p.lambda_parent),
                        "parent intensity must be positive and finite");
                require(static_cast<bool>(p.sampler), "cluster sampler missing");
                require(p.mean_size > 0, "mean cluster size must be positive");
                require(p.prob_nonempty > 0 && p.prob_nonempty <= 1,
                        "P(cluster nonempty) must be in (0, 1]");
                require(p.max_size >= 1, "max cluster size must be >= 1");
                require(p.extent >= 0, "cluster extent must be >= 0");
            },
            [](MixedPoisson const& p) {
                double const m = p.mixing.mean();
                require(m > 0 && std::isfinite(m),
                        "mixing mean must be positive and finite");
            }},
        process);
}

std::string ProcessSpec::describe() const
{
    using namespace processes;
    std::ostringstream os;
    std::visit(
        Overloaded{[&](PoissonGerms const& p) {
                       os << "PoissonGerms(lambda=" << p.lambda << ")";
                   },
                   [&](NeymanScott const& p) {
                       os << "NeymanScott(lambda_parent=" << p.lambda_parent
                          << ", size=" << p.size.describe()
                          << ", points=" << p.points.describe() << ")";
                   },
                   [&](GaussPoisson const& p) {
                       os << "GaussPoisson(lambda_parent=" << p.lambda_parent
                          << ", p=" << p.p
                          << ", secondary=" << p.secondary.describe() << ")";
                   },
                   [&](GenericCluster const& p) {
                       os << "GenericCluster(lambda_parent=" << p.lambda_parent
                          << ", " << p.name << ")";
                   },
                   [&](MixedPoisson const& p) {
                       os << "MixedPoisson(mixing=" << p.mixing.describe()
                          << ")";
                   }},
        process);
    os << " grains=" << grain_radius.describe() << " window=" << window
       << " d=" << dimension;
    return os.str();
}

ProcessSpec boolean_spec(double lambda, RadiusLaw radius, double window, int dim)
{
    ProcessSpec s{processes::PoissonGerms{lambda}, std::move(radius), window,
                  dim};
    s.validate();
    return s;
}

ProcessSpec neyman_scott_spec(double lambda_parent, ClusterSizeLaw size,
                              ClusterPointLaw points, RadiusLaw radius,
                              double window, int dim)
{
    ProcessSpec s{processes::NeymanScott{lambda_parent, std::move(size),
                                         std::move(points)},
                  std::move(radius), window, dim};
    s.validate();
    return s;
}

ProcessSpec gauss_poisson_spec(double lambda_parent, double p,
                               ClusterPointLaw secondary, RadiusLaw radius,
                               double window, int dim)
{
    ProcessSpec s{processes::GaussPoisson{lambda_parent, p, std::move(secondary)},
                  std::move(radius), window, dim};
    s.validate();
    return s;
}

ProcessSpec mixed_poisson_spec(IntensityLaw mixing, RadiusLaw radius,
                               double window, int dim)
{
    ProcessSpec s{processes::MixedPoisson{std::move(mixing)}, std::move(radius),
                  window, dim};
    s.validate();
    return s;
}

ProcessSpec scaled_cluster_spec(double lambda_parent, ClusterSizeLaw size,
                                ClusterPointLaw points, ScaleLaw scale,
                                RadiusLaw radius, double window, int dim)
{
    int const max_size = static_cast<int>(size.pmf_table().size()) - 1;
    double const w_hi = scale.sup() < std::numeric_limits<double>::infinity()
                            ? scale.sup()
                            : scale.quantile(0.999);
    processes::GenericCluster g;
    g.lambda_parent = lambda_parent;
    g.name = "scaled " + size.describe() + " x " + points.describe() + " by "
             + scale.describe();
    g.mean_size = size.mean();
    g.prob_nonempty = 1 - size.prob_zero();
    g.max_size = std::max(1, max_size);
    g.extent = w_hi * points.extent(dim);
    g.sampler = [size, points, scale](RandomStream& rng, int d,
                                      std::vector<Vec>& out) {
        double const w = scale.quantile(rng.uniform_open());
        sample_cluster(size, points, d, rng, out);
        for (auto& y : out)
            y = w * y;
    };
    ProcessSpec s{std::move(g), std::move(radius), window, dim};
    s.validate();
    return s;
}

std::optional<std::string> window_warning(ProcessSpec const& spec, double t_max)
{
    double const reach = spec.cluster_extent() + t_max;
    if (reach > spec.window / 4)
    {
        std::ostringstream os;
        os << "cluster scale + t_max = " << reach
           << " exceeds a quarter of the window (" << spec.window / 4
           << "); periodic images may interact";
        return os.str();
    }
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// Samplers
//---------------------------------------------------------------------------//
std::vector<Vec>
sample_poisson_pattern(double lambda, double side, int dim, std::uint64_t seed)
{
    require(lambda >= 0, "intensity must be >= 0");
    if (lambda == 0)
        return {};
    auto const spec = boolean_spec(lambda, RadiusLaw::degenerate(0), side, dim);
    return sample_scene(spec, seed).germs;
}

void sample_cluster(ClusterSizeLaw const& size, ClusterPointLaw const& points,
                    int dim, RandomStream& rng, std::vector<Vec>& out)
{
    out.clear();
    int const n = size.sample(rng);
    for (int i = 0; i < n; ++i)
        out.push_back(points.sample(rng, dim));
}

void sample_typical_cluster(ProcessSpec const& spec, RandomStream& rng,
                            std::vector<Vec>& out)
{
    using namespace processes;
    int const dim = spec.dimension;
    out.clear();
    if (auto const* ns = spec.get_if<NeymanScott>())
    {
        sample_cluster(ns->size, ns->points, dim, rng, out);
    }
    else if (auto const* gp = spec.get_if<GaussPoisson>())
    {
        out.assign(1, Vec{});
        if (rng.uniform() < gp->p)
            out.push_back(gp->secondary.sample(rng, dim));
    }
    else if (auto const* gc = spec.get_if<GenericCluster>())
    {
        gc->sampler(rng, dim, out);
    }
    else
    {
        throw std::invalid_argument("typical cluster needs a cluster-type "
                                    "spec");
    }
}

GermGrainScene
sample_scene(ProcessSpec const& spec, std::uint64_t seed,
             std::uint64_t replication)
{
    using namespace processes;
    spec.validate();
    int const dim = spec.dimension;
    double const side = spec.window;
    double const vol = window_volume(side, dim);

    RandomStream const root = RandomStream(seed, 0).substream(replication);
    RandomStream head = root.substream(0);

    GermGrainScene scene;
    scene.dim = dim;
    scene.side = side;

    auto add = [&](Vec const& x, RandomStream& rng, int cluster) {
        scene.germs.push_back(wrap(x, side, dim));
        scene.radii.push_back(spec.grain_radius.sample(rng));
        scene.cluster_id.push_back(cluster);
    };

    auto poisson_germs = [&](IntensityLaw const& mixing) {
        double const lambda = mixing.sample(head);
        int const n = poisson_count(head, lambda * vol);
        scene.realized_lambda = lambda;
        scene.parent_count = static_cast<std::size_t>(n);
        for (int k = 0; k < n; ++k)
        {
            RandomStream rng = root.substream(static_cast<std::uint64_t>(k) + 1);
            add(uniform_point(rng, side, dim), rng, k);
        }
    };

    std::vector<Vec> offsets;
    auto cluster_germs = [&](double lambda_parent, auto&& draw_cluster) {
        int const n = poisson_count(head, lambda_parent * vol);
        scene.realized_lambda = spec.intensity();
        scene.parent_count = static_cast<std::size_t>(n);
        for (int k = 0; k < n; ++k)
        {
            RandomStream rng = root.substream(static_cast<std::uint64_t>(k) + 1);
            Vec const parent = uniform_point(rng, side, dim);
            draw_cluster(rng, offsets);
            for (auto const& y : offsets)
                add(parent + y, rng, k);
        }
    };

    std::visit(
        Overloaded{
            [&](PoissonGerms const& p) {
                poisson_germs(IntensityLaw::degenerate(p.lambda));
            },
            [&](MixedPoisson const& p) { poisson_germs(p.mixing); },
            [&](auto const& p) {
                cluster_germs(p.lambda_parent,
                              [&](RandomStream& rng, std::vector<Vec>& out) {
                                  sample_typical_cluster(spec, rng, out);
                              });
            }},
        spec.process);
    return scene;
}

//---------------------------------------------------------------------------//
// Palm sampling
//---------------------------------------------------------------------------//
PalmSampler::PalmSampler(ProcessSpec const& spec) : spec_(spec)
{
    spec_.validate();
    if (!spec_.is_cluster())
        throw std::invalid_argument("Palm sampling needs a cluster-type spec");
    if (auto const* ns = spec_.get_if<processes::NeymanScott>())
        biased_ = length_biased(ns->size);
}

void PalmSampler::sample(RandomStream& rng, PalmCluster& out) const
{
    using namespace processes;
    int const dim = spec_.dimension;
    out.others.clear();
    if (auto const* ns = spec_.get_if<NeymanScott>())
    {
        // Cluster containing the chosen point has 1 + eta_l points; all are
        // i.i.d. so the chosen one can be the first.
        int const extra = biased_->sample(rng);
        out.chosen = ns->points.sample(rng, dim);
        for (int i = 0; i < extra; ++i)
            out.others.push_back(ns->points.sample(rng, dim) - out.chosen);
        return;
    }
    if (auto const* gp = spec_.get_if<GaussPoisson>())
    {
        // Size 2 is chosen with probability 2p / (1 + p)
        out.chosen = Vec{};
        if (rng.uniform() * (1 + gp->p) < 2 * gp->p)
        {
            Vec const y = gp->secondary.sample(rng, dim);
            if (rng.uniform() < 0.5)
            {
                out.others.push_back(y);
            }
            else
            {
                out.chosen = y;
                out.others.push_back(-y);
            }
        }
        return;
    }
    auto const& gc = std::get<GenericCluster>(spec_.process);
    std::vector<Vec> cluster;
    for (;;)
    {
        cluster.clear();
        gc.sampler(rng, dim, cluster);
        int const n = static_cast<int>(cluster.size());
        if (n > gc.max_size)
            throw std::runtime_error("generic cluster exceeded its max_size");
        if (n == 0 || !(rng.uniform() * gc.max_size < n))
            continue;
        auto const pick = static_cast<std::size_t>(
            std::min<double>(n - 1, std::floor(rng.uniform() * n)));
        out.chosen = cluster[pick];
        for (std::size_t j = 0; j < cluster.size(); ++j)
            if (j != pick)
                out.others.push_back(cluster[j] - out.chosen);
        return;
    }
}

void PalmSampler::sample_Y0(RandomStream& rng, PalmCluster& work,
                            GrainSet& out) const
{
    sample(rng, work);
    out.centers = work.others;
    out.radii.resize(out.centers.size());
    for (auto& r : out.radii)
        r = spec_.grain_radius.sample(rng);
}

void sample_typical_cluster_palm(ProcessSpec const& spec, RandomStream& rng,
                                 PalmCluster& out)
{
    PalmSampler(spec).sample(rng, out);
}

void sample_Y0(ProcessSpec const& spec, RandomStream& rng, GrainSet& out)
{
    PalmCluster work;
    PalmSampler(spec).sample_Y0(rng, work, out);
}

}  // namespace emptyspace
