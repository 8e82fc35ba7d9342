#include "emptyspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "emptyspace/parallel.hpp"

namespace emptyspace {
namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kBisectionSteps = 60;

double cross2(Vec const& a, Vec const& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec closest_on_segment(Vec const& x, Vec const& a, Vec const& b)
{
    Vec const e = b - a;
    double const ee = dot(e, e);
    if (ee == 0)
        return a;
    double const s = std::clamp(dot(x - a, e) / ee, 0.0, 1.0);
    return a + s * e;
}

void check_dim(int dim)
{
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("dimension must be in [1, 3]");
}

}  // namespace

//---------------------------------------------------------------------------//
// GaugeBody
//---------------------------------------------------------------------------//
GaugeBody GaugeBody::ball(double radius, int dim)
{
    check_dim(dim);
    if (!(radius > 0) || !std::isfinite(radius))
        throw std::invalid_argument("ball gauge radius must be > 0");
    return GaugeBody(gauge_shapes::Ball{radius}, dim);
}

GaugeBody GaugeBody::box(Vec half_widths, int dim)
{
    check_dim(dim);
    for (int i = 0; i < kMaxDim; ++i)
    {
        if (i < dim && !(half_widths[i] > 0 && std::isfinite(half_widths[i])))
            throw std::invalid_argument("box half-widths must be > 0");
        if (i >= dim)
            half_widths[i] = 0;
    }
    return GaugeBody(gauge_shapes::Box{half_widths}, dim);
}

GaugeBody GaugeBody::polygon(std::vector<Vec> vertices)
{
    std::size_t const n = vertices.size();
    if (n < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    double area2 = 0;
    double scale = 0;
    for (std::size_t k = 0; k < n; ++k)
    {
        vertices[k][2] = 0;
        area2 += cross2(vertices[k], vertices[(k + 1) % n]);
        scale = std::max(scale, norm(vertices[k]));
    }
    if (area2 < 0)
        std::reverse(vertices.begin(), vertices.end());

    gauge_shapes::Polygon p;
    double turning = 0;
    for (std::size_t k = 0; k < n; ++k)
    {
        Vec const e0 = vertices[(k + 1) % n] - vertices[k];
        Vec const e1 = vertices[(k + 2) % n] - vertices[(k + 1) % n];
        if (cross2(e0, e1) <= 1e-12 * scale * scale)
            throw std::invalid_argument("polygon vertices are not strictly "
                                        "convex");
        turning += std::atan2(cross2(e0, e1), dot(e0, e1));
        double const len = norm(e0);
        Vec nrm;
        nrm[0] = e0[1] / len;
        nrm[1] = -e0[0] / len;
        double const h = dot(nrm, vertices[k]);
        if (!(h > 1e-12 * scale))
            throw std::invalid_argument("polygon must contain the origin in "
                                        "its interior");
        p.normals.push_back(nrm);
        p.offsets.push_back(h);
    }
    if (std::abs(turning - kTwoPi) > 1e-6)
        throw std::invalid_argument("polygon is not simple");
    p.vertices = std::move(vertices);
    return GaugeBody(std::move(p), 2);
}

GaugeBody GaugeBody::segment(Vec end, int dim)
{
    check_dim(dim);
    for (int i = dim; i < kMaxDim; ++i)
        end[i] = 0;
    if (!(norm(end) > 0))
        throw std::invalid_argument("segment end must be nonzero");
    return GaugeBody(gauge_shapes::Segment{end}, dim);
}

bool GaugeBody::full_dimensional() const
{
    return !get_if<gauge_shapes::Segment>();
}

double GaugeBody::gauge(Vec const& x) const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{
            [&](Ball const& b) { return norm(x) / b.radius; },
            [&](Box const& b) {
                double g = 0;
                for (int i = 0; i < dim_; ++i)
                    g = std::max(g, std::abs(x[i]) / b.half_widths[i]);
                return g;
            },
            [&](Polygon const& p) {
                double g = 0;
                for (std::size_t k = 0; k < p.normals.size(); ++k)
                    g = std::max(g, dot(p.normals[k], x) / p.offsets[k]);
                return g;
            },
            [&](Segment const& s) {
                double const ee = dot(s.end, s.end);
                double const a = dot(x, s.end) / ee;
                double const xx = norm(x);
                if (xx == 0)
                    return 0.0;
                if (a <= 0 || norm(x - a * s.end) > 1e-12 * xx)
                    return kInfinity;
                return a;
            }},
        v_);
}

double GaugeBody::support(Vec const& u) const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{[&](Ball const& b) { return b.radius * norm(u); },
                   [&](Box const& b) {
                       double h = 0;
                       for (int i = 0; i < dim_; ++i)
                           h += b.half_widths[i] * std::abs(u[i]);
                       return h;
                   },
                   [&](Polygon const& p) {
                       double h = -kInfinity;
                       for (auto const& v : p.vertices)
                           h = std::max(h, dot(v, u));
                       return h;
                   },
                   [&](Segment const& s) {
                       return std::max(0.0, dot(s.end, u));
                   }},
        v_);
}

GaugeBody GaugeBody::reflected() const
{
    using namespace gauge_shapes;
    if (auto const* p = get_if<Polygon>())
    {
        auto verts = p->vertices;
        for (auto& v : verts)
            v = -v;
        return polygon(std::move(verts));
    }
    if (auto const* s = get_if<Segment>())
        return segment(-s->end, dim_);
    return *this;
}

double GaugeBody::volume() const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{[&](Ball const& b) {
                       return unit_ball_volume(dim_) * std::pow(b.radius, dim_);
                   },
                   [&](Box const& b) {
                       double v = 1;
                       for (int i = 0; i < dim_; ++i)
                           v *= 2 * b.half_widths[i];
                       return v;
                   },
                   [&](Polygon const& p) {
                       double a = 0;
                       std::size_t const n = p.vertices.size();
                       for (std::size_t k = 0; k < n; ++k)
                           a += cross2(p.vertices[k], p.vertices[(k + 1) % n]);
                       return 0.5 * a;
                   },
                   [&](Segment const& s) {
                       return dim_ == 1 ? norm(s.end) : 0.0;
                   }},
        v_);
}

double GaugeBody::surface_area() const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{[&](Ball const& b) {
                       return dim_ * unit_ball_volume(dim_)
                              * std::pow(b.radius, dim_ - 1);
                   },
                   [&](Box const& b) {
                       auto const& h = b.half_widths;
                       switch (dim_)
                       {
                           case 1:
                               return 2.0;
                           case 2:
                               return 4 * (h[0] + h[1]);
                           default:
                               return 8 * (h[0] * h[1] + h[1] * h[2]
                                           + h[0] * h[2]);
                       }
                   },
                   [&](Polygon const& p) {
                       double per = 0;
                       std::size_t const n = p.vertices.size();
                       for (std::size_t k = 0; k < n; ++k)
                           per += norm(p.vertices[(k + 1) % n] - p.vertices[k]);
                       return per;
                   },
                   [&](Segment const& s) {
                       return dim_ == 2 ? 2 * norm(s.end) : 0.0;
                   }},
        v_);
}

double GaugeBody::circumradius() const
{
    using namespace gauge_shapes;
    return std::visit(Overloaded{[](Ball const& b) { return b.radius; },
                                 [](Box const& b) { return norm(b.half_widths); },
                                 [](Polygon const& p) {
                                     double r = 0;
                                     for (auto const& v : p.vertices)
                                         r = std::max(r, norm(v));
                                     return r;
                                 },
                                 [](Segment const& s) { return norm(s.end); }},
                      v_);
}

Vec GaugeBody::bounding_half_widths() const
{
    using namespace gauge_shapes;
    Vec h;
    std::visit(Overloaded{[&](Ball const& b) {
                              for (int i = 0; i < dim_; ++i)
                                  h[i] = b.radius;
                          },
                          [&](Box const& b) { h = b.half_widths; },
                          [&](Polygon const& p) {
                              for (auto const& v : p.vertices)
                                  for (int i = 0; i < 2; ++i)
                                      h[i] = std::max(h[i], std::abs(v[i]));
                          },
                          [&](Segment const& s) {
                              for (int i = 0; i < dim_; ++i)
                                  h[i] = std::abs(s.end[i]);
                          }},
               v_);
    return h;
}

Vec GaugeBody::closest_point(Vec const& x) const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{[&](Ball const& b) {
                       double const r = norm(x);
                       return r <= b.radius ? x : (b.radius / r) * x;
                   },
                   [&](Box const& b) {
                       Vec p;
                       for (int i = 0; i < dim_; ++i)
                           p[i] = std::clamp(x[i], -b.half_widths[i],
                                             b.half_widths[i]);
                       return p;
                   },
                   [&](Polygon const& p) {
                       if (gauge(x) <= 1.0)
                           return x;
                       Vec best;
                       double best_d = kInfinity;
                       std::size_t const n = p.vertices.size();
                       for (std::size_t k = 0; k < n; ++k)
                       {
                           Vec const q = closest_on_segment(
                               x, p.vertices[k], p.vertices[(k + 1) % n]);
                           double const dq = norm(x - q);
                           if (dq < best_d)
                           {
                               best_d = dq;
                               best = q;
                           }
                       }
                       return best;
                   },
                   [&](Segment const& s) {
                       return closest_on_segment(x, Vec{}, s.end);
                   }},
        v_);
}

double GaugeBody::distance_to(Vec const& x) const
{
    if (auto const* b = get_if<gauge_shapes::Ball>())
        return std::max(norm(x) - b->radius, 0.0);
    return norm(x - closest_point(x));
}

Vec GaugeBody::outer_normal(Vec const& w) const
{
    using namespace gauge_shapes;
    return std::visit(
        Overloaded{[&](Ball const&) { return w / norm(w); },
                   [&](Box const& b) {
                       int best = 0;
                       double g = -1;
                       for (int i = 0; i < dim_; ++i)
                       {
                           double const gi = std::abs(w[i]) / b.half_widths[i];
                           if (gi > g)
                           {
                               g = gi;
                               best = i;
                           }
                       }
                       Vec n;
                       n[best] = w[best] >= 0 ? 1.0 : -1.0;
                       return n;
                   },
                   [&](Polygon const& p) {
                       std::size_t best = 0;
                       double g = -kInfinity;
                       for (std::size_t k = 0; k < p.normals.size(); ++k)
                       {
                           double const gk = dot(p.normals[k], w) / p.offsets[k];
                           if (gk > g)
                           {
                               g = gk;
                               best = k;
                           }
                       }
                       return p.normals[best];
                   },
                   [&](Segment const&) -> Vec {
                       throw std::invalid_argument(
                           "segment gauge has no outer normal");
                   }},
        v_);
}

std::string GaugeBody::describe() const
{
    using namespace gauge_shapes;
    std::ostringstream os;
    std::visit(Overloaded{[&](Ball const& b) { os << "Ball(" << b.radius << ")"; },
                          [&](Box const& b) {
                              os << "Box(";
                              for (int i = 0; i < dim_; ++i)
                                  os << (i ? ", " : "") << b.half_widths[i];
                              os << ")";
                          },
                          [&](Polygon const& p) {
                              os << "Polygon(" << p.vertices.size()
                                 << " vertices)";
                          },
                          [&](Segment const& s) {
                              os << "Segment(";
                              for (int i = 0; i < dim_; ++i)
                                  os << (i ? ", " : "") << s.end[i];
                              os << ")";
                          }},
               v_);
    return os.str();
}

//---------------------------------------------------------------------------//
// Distances
//---------------------------------------------------------------------------//
double gauge_distance(GaugeBody const& body, Vec const& x)
{
    return body.gauge(x);
}

double distance_to_scaled(GaugeBody const& body, Vec const& z, double t)
{
    if (auto const* b = body.get_if<gauge_shapes::Ball>())
        return std::max(norm(z) - t * b->radius, 0.0);
    if (t <= 0)
        return norm(z);
    return t * body.distance_to(z / t);
}

namespace {
// Smallest t with dist(z, tB) <= radius; z = center - x.
double contact_time(GaugeBody const& body, Vec const& z, double radius)
{
    if (auto const* b = body.get_if<gauge_shapes::Ball>())
        return std::max((norm(z) - radius) / b->radius, 0.0);
    if (radius <= 0)
        return body.gauge(z);
    if (norm(z) <= radius)
        return 0.0;

    double hi;
    if (auto const* s = body.get_if<gauge_shapes::Segment>())
    {
        double const a = dot(z, s->end) / dot(s->end, s->end);
        if (a <= 0 || norm(z - a * s->end) > radius)
            return kInfinity;
        hi = a;
    }
    else
    {
        hi = body.gauge(z);
    }
    double lo = 0;
    for (int it = 0; it < kBisectionSteps; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        if (distance_to_scaled(body, z, mid) <= radius)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Contact direction -p/t with p the point of tB nearest to z.
Vec contact_direction(GaugeBody const& body, Vec const& z, double t)
{
    if (auto const* b = body.get_if<gauge_shapes::Ball>())
        return (-b->radius / norm(z)) * z;
    return -body.closest_point(z / t);
}
}  // namespace

double distance_to_ball(GaugeBody const& body, Vec const& x, Vec const& center,
                        double radius)
{
    if (radius < 0)
        throw std::invalid_argument("grain radius must be >= 0");
    return contact_time(body, center - x, radius);
}

//---------------------------------------------------------------------------//
// DirectionSectors
//---------------------------------------------------------------------------//
DirectionSectors DirectionSectors::all() { return DirectionSectors{}; }

DirectionSectors DirectionSectors::angular(std::vector<double> boundaries)
{
    if (boundaries.empty())
        throw std::invalid_argument("angular sectors need boundaries");
    for (std::size_t i = 0; i < boundaries.size(); ++i)
    {
        if (!(boundaries[i] >= 0 && boundaries[i] < kTwoPi))
            throw std::invalid_argument("sector boundaries must be in [0, 2pi)");
        if (i > 0 && !(boundaries[i] > boundaries[i - 1]))
            throw std::invalid_argument("sector boundaries must increase");
    }
    DirectionSectors s;
    s.kind_ = Kind::angular;
    s.boundaries_ = std::move(boundaries);
    return s;
}

DirectionSectors DirectionSectors::uniform_angular(int count)
{
    if (count < 1)
        throw std::invalid_argument("sector count must be >= 1");
    if (count == 1)
        return all();
    std::vector<double> b;
    for (int i = 0; i < count; ++i)
        b.push_back(kTwoPi * i / count);
    return angular(std::move(b));
}

DirectionSectors DirectionSectors::half_space(Vec normal)
{
    double const n = norm(normal);
    if (!(n > 0))
        throw std::invalid_argument("half-space normal must be nonzero");
    DirectionSectors s;
    s.kind_ = Kind::half_space;
    s.normal_ = normal / n;
    return s;
}

int DirectionSectors::count() const
{
    switch (kind_)
    {
        case Kind::all:
            return 1;
        case Kind::angular:
            return static_cast<int>(boundaries_.size());
        case Kind::half_space:
            return 2;
    }
    return 1;
}

int DirectionSectors::classify(Vec const& u) const
{
    switch (kind_)
    {
        case Kind::all:
            return 0;
        case Kind::half_space:
            return dot(u, normal_) >= 0 ? 0 : 1;
        case Kind::angular: {
            if (u[2] != 0)
                throw std::invalid_argument("angular sectors are planar only");
            double const a = planar_angle(u);
            auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), a);
            if (it == boundaries_.begin())
                return count() - 1;
            return static_cast<int>(it - boundaries_.begin()) - 1;
        }
    }
    return 0;
}

double DirectionSectors::isotropic_fraction(int i) const
{
    switch (kind_)
    {
        case Kind::all:
            return 1.0;
        case Kind::half_space:
            return 0.5;
        case Kind::angular: {
            int const n = count();
            double const lo = boundaries_[i];
            double const hi = i + 1 < n ? boundaries_[i + 1]
                                        : boundaries_[0] + kTwoPi;
            return (hi - lo) / kTwoPi;
        }
    }
    return 1.0;
}

std::string DirectionSectors::label(int i) const
{
    if (kind_ == Kind::all)
        return "all";
    return std::to_string(i);
}

//---------------------------------------------------------------------------//
// Contacts
//---------------------------------------------------------------------------//
Vec covered_direction(GaugeBody const& body)
{
    Vec e;
    e[0] = 1;
    double const g = body.gauge(-e);
    if (std::isfinite(g) && g > 0)
        return e / g;
    if (auto const* s = body.get_if<gauge_shapes::Segment>())
        return -s->end;
    return e;
}

ContactIndex::ContactIndex(GermGrainScene const& scene, GaugeBody const& body,
                           double t_max)
    : scene_(&scene), body_(&body)
{
    if (scene.dim != body.dim())
        throw std::invalid_argument("scene and gauge dimensions differ");
    reach_ = t_max * body.circumradius() + scene.max_radius();
    tie_tol_ = 1e-9 * scene.side * std::sqrt(double(scene.dim));
    if (!std::isfinite(reach_) || scene.side <= 0)
        return;

    int const n = static_cast<int>(std::floor(scene.side / reach_));
    if (n < 3 || std::pow(double(n), scene.dim) > 4e6)
        return;
    cells_per_axis_ = n;
    cell_size_ = scene.side / n;

    std::size_t ncells = 1;
    for (int i = 0; i < scene.dim; ++i)
        ncells *= static_cast<std::size_t>(n);
    auto cell_of = [&](Vec const& p) {
        std::size_t idx = 0;
        for (int i = scene.dim - 1; i >= 0; --i)
        {
            int c = static_cast<int>(std::floor(p[i] / cell_size_));
            c = std::clamp(c, 0, n - 1);
            idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(c);
        }
        return idx;
    };
    cell_start_.assign(ncells + 1, 0);
    for (auto const& g : scene.germs)
        ++cell_start_[cell_of(g) + 1];
    for (std::size_t c = 0; c < ncells; ++c)
        cell_start_[c + 1] += cell_start_[c];
    cell_items_.resize(scene.size());
    std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (std::uint32_t k = 0; k < scene.size(); ++k)
        cell_items_[fill[cell_of(scene.germs[k])]++] = k;
}

void ContactIndex::consider(Vec const& x, std::uint32_t k, Contact& best) const
{
    // Contact::direction temporarily holds the displacement z of the best
    // grain; query() converts it to a contact direction at the end.
    Vec const z = torus_delta(x, scene_->germs[k], scene_->side, scene_->dim);
    double const r = scene_->radii[k];
    if (!(dot(z, z) <= reach_ * reach_) && std::isfinite(reach_))
        return;
    double const d = contact_time(*body_, z, r);
    if (!std::isfinite(d))
        return;
    int const ki = static_cast<int>(k);
    if (best.grain < 0 || d < best.distance - tie_tol_)
    {
        best.distance = d;
        best.grain = ki;
        best.direction = z;
        best.tie = false;
    }
    else if (d <= best.distance + tie_tol_)
    {
        if (d > 0 || best.distance > 0)
            best.tie = true;
        if (ki < best.grain)
        {
            best.distance = d;
            best.grain = ki;
            best.direction = z;
        }
    }
}

Contact ContactIndex::query(Vec const& x) const
{
    Contact best;
    if (cells_per_axis_ == 0)
    {
        for (std::uint32_t k = 0; k < scene_->size(); ++k)
            consider(x, k, best);
    }
    else
    {
        int const n = cells_per_axis_;
        int const dim = scene_->dim;
        int base[kMaxDim] = {0, 0, 0};
        for (int i = 0; i < dim; ++i)
            base[i] = std::clamp(static_cast<int>(std::floor(x[i] / cell_size_)),
                                 0, n - 1);
        int const span0 = 3;
        int const span1 = dim >= 2 ? 3 : 1;
        int const span2 = dim >= 3 ? 3 : 1;
        for (int a = 0; a < span2; ++a)
        {
            for (int b = 0; b < span1; ++b)
            {
                for (int c = 0; c < span0; ++c)
                {
                    int const off[kMaxDim] = {c - 1, b - 1, a - 1};
                    std::size_t idx = 0;
                    for (int i = dim - 1; i >= 0; --i)
                    {
                        int ci = (base[i] + off[i] + n) % n;
                        idx = idx * static_cast<std::size_t>(n)
                              + static_cast<std::size_t>(ci);
                    }
                    for (std::uint32_t j = cell_start_[idx];
                         j < cell_start_[idx + 1]; ++j)
                        consider(x, cell_items_[j], best);
                }
            }
        }
    }

    if (best.grain < 0)
    {
        best.direction = Vec{};
        return best;
    }
    if (best.distance <= 0)
    {
        best.covered = true;
        best.distance = 0;
        best.direction = covered_direction(*body_);
        return best;
    }
    best.direction = contact_direction(*body_, best.direction, best.distance);
    return best;
}

Contact
scene_contact(GaugeBody const& body, Vec const& x, GermGrainScene const& scene)
{
    ContactIndex index(scene, body, kInfinity);
    return index.query(x);
}

//---------------------------------------------------------------------------//
// Direction measure
//---------------------------------------------------------------------------//
double nu_total(GaugeBody const& body)
{
    if (!body.full_dimensional())
        throw std::invalid_argument("direction measure needs a full-"
                                    "dimensional gauge body");
    return body.dim() * body.volume();
}

NuMeasure nu_measure(GaugeBody const& body, DirectionSectors const& sectors,
                     std::size_t samples, std::uint64_t seed)
{
    double const total = nu_total(body);
    int const k = sectors.count();
    NuMeasure out;
    out.value.assign(k, 0.0);
    out.se.assign(k, 0.0);

    bool const angular_ok = sectors.kind() != DirectionSectors::Kind::angular
                            || body.dim() == 2;
    if (!angular_ok)
        throw std::invalid_argument("angular sectors are planar only");
    if (body.is_ball())
    {
        out.exact = true;
        out.total = total;
        for (int i = 0; i < k; ++i)
            out.value[i] = total * sectors.isotropic_fraction(i);
        return out;
    }
    if (samples == 0)
        throw std::invalid_argument("nu_measure needs samples > 0");

    int const dim = body.dim();
    Vec const h = body.bounding_half_widths();
    double box_volume = 1;
    for (int i = 0; i < dim; ++i)
        box_volume *= 2 * h[i];

    constexpr std::size_t chunk = 1 << 16;
    std::size_t const nchunks = (samples + chunk - 1) / chunk;
    std::vector<std::vector<std::size_t>> counts(
        nchunks, std::vector<std::size_t>(k, 0));
    RandomStream root(seed, 0x6e75);
    parallel_for(nchunks, [&](std::size_t c) {
        RandomStream rng = root.substream(c);
        std::size_t const n = std::min(chunk, samples - c * chunk);
        for (std::size_t s = 0; s < n; ++s)
        {
            Vec x;
            for (int i = 0; i < dim; ++i)
                x[i] = h[i] * (2 * rng.uniform() - 1);
            double const g = body.gauge(-x);
            if (g <= 1.0 && g > 0)
                ++counts[c][sectors.classify(x / g)];
        }
    });

    double const scale = dim * box_volume;
    double const nd = static_cast<double>(samples);
    std::size_t hits = 0;
    for (int i = 0; i < k; ++i)
    {
        std::size_t ci = 0;
        for (auto const& row : counts)
            ci += row[i];
        hits += ci;
        double const p = ci / nd;
        out.value[i] = scale * p;
        out.se[i] = scale * std::sqrt(p * (1 - p) / nd);
        out.total += out.value[i];
    }
    double const p = hits / nd;
    out.total_se = scale * std::sqrt(p * (1 - p) / nd);
    return out;
}

Vec sample_nu_direction(GaugeBody const& body, RandomStream& rng)
{
    int const dim = body.dim();
    if (auto const* b = body.get_if<gauge_shapes::Ball>())
    {
        Vec u;
        if (dim == 2)
        {
            double const a = kTwoPi * rng.uniform();
            u[0] = b->radius * std::cos(a);
            u[1] = b->radius * std::sin(a);
        }
        else if (dim == 1)
        {
            u[0] = rng.uniform() < 0.5 ? -b->radius : b->radius;
        }
        else
        {
            double n = 0;
            do
            {
                for (int i = 0; i < dim; ++i)
                    u[i] = rng.normal();
                n = norm(u);
            } while (n == 0);
            u = (b->radius / n) * u;
        }
        return u;
    }
    if (!body.full_dimensional())
        throw std::invalid_argument("direction measure needs a full-"
                                    "dimensional gauge body");
    Vec const h = body.bounding_half_widths();
    for (;;)
    {
        Vec x;
        for (int i = 0; i < dim; ++i)
            x[i] = h[i] * (2 * rng.uniform() - 1);
        double const g = body.gauge(-x);
        if (g <= 1.0 && g > 0)
            return x / g;
    }
}

Vec sample_nu_direction(GaugeBody const& body, DirectionSectors const& sectors,
                        int sector, RandomStream& rng)
{
    if (sectors.kind() == DirectionSectors::Kind::all)
        return sample_nu_direction(body, rng);
    auto const* b = body.get_if<gauge_shapes::Ball>();
    if (b && body.dim() == 2 && sectors.kind() == DirectionSectors::Kind::angular)
    {
        double const lo = sectors.boundaries()[sector];
        double const a = lo + kTwoPi * sectors.isotropic_fraction(sector)
                                  * rng.uniform();
        Vec u;
        u[0] = b->radius * std::cos(a);
        u[1] = b->radius * std::sin(a);
        return u;
    }
    for (int tries = 0; tries < 10'000'000; ++tries)
    {
        Vec const u = sample_nu_direction(body, rng);
        if (sectors.classify(u) == sector)
            return u;
    }
    throw std::runtime_error("direction sector has negligible mass");
}

//---------------------------------------------------------------------------//
// Steiner coefficients
//---------------------------------------------------------------------------//
double SteinerCoefficients::value(double t) const
{
    double acc = 0;
    for (double ci : c)
        acc = acc * t + ci;
    return acc;
}

double SteinerCoefficients::derivative(double t) const
{
    double acc = 0;
    for (int i = 0; i < dim; ++i)
        acc = acc * t + (dim - i) * c[i];
    return acc;
}

SteinerCoefficients steiner_coefficients_ball_grain(GaugeBody const& body,
                                                    RadiusLaw const& radius,
                                                    SteinerOptions const& opts)
{
    if (!body.full_dimensional())
        throw std::invalid_argument("Steiner coefficients need a full-"
                                    "dimensional gauge body");
    int const d = body.dim();
    SteinerCoefficients out;
    out.dim = d;
    out.c.assign(d + 1, 0.0);
    out.se.assign(d + 1, 0.0);

    if (opts.method == SteinerMethod::automatic)
    {
        if (auto const* b = body.get_if<gauge_shapes::Ball>())
        {
            // b_d E[(R + rho t)^d] expanded in t
            double binom = 1;
            for (int i = 0; i <= d; ++i)
            {
                out.c[d - i] = unit_ball_volume(d) * binom * radius.moment(d - i)
                               * std::pow(b->radius, i);
                binom = binom * (d - i) / (i + 1);
            }
            return out;
        }
        if (d == 1)
        {
            out.c = {body.volume(), 2 * radius.mean()};
            return out;
        }
        if (d == 2)
        {
            out.c = {body.volume(), body.surface_area() * radius.mean(),
                     std::numbers::pi * radius.moment(2)};
            return out;
        }
    }

    out.exact = false;
    double const circ = body.circumradius();
    double const r_hi = radius.sup() < kInfinity ? radius.sup()
                                                 : radius.quantile(0.999);
    double const h = opts.node_spacing > 0 ? opts.node_spacing
                                           : 0.5 * std::max(circ, r_hi);
    GaugeBody const reflected = body.reflected();
    std::vector<double> nodes(d + 1);
    std::vector<double> y(d + 1), y_se(d + 1);
    for (int k = 0; k <= d; ++k)
        nodes[k] = k * h;

    RandomStream root(opts.seed, 0x5731);
    parallel_for(static_cast<std::size_t>(d + 1), [&](std::size_t k) {
        RandomStream rng = root.substream(k);
        double const t = nodes[k];
        double sum = 0, sum2 = 0;
        for (std::size_t s = 0; s < opts.samples; ++s)
        {
            double const r = radius.sample(rng);
            double const half = r + t * circ;
            Vec z;
            for (int i = 0; i < d; ++i)
                z[i] = half * (2 * rng.uniform() - 1);
            double v = 0;
            if (distance_to_scaled(reflected, z, t) <= r)
                v = std::pow(2 * half, d);
            sum += v;
            sum2 += v * v;
        }
        double const n = static_cast<double>(opts.samples);
        y[k] = sum / n;
        y_se[k] = std::sqrt(std::max(0.0, sum2 / n - y[k] * y[k]) / n);
    });

    Eigen::MatrixXd vander(d + 1, d + 1);
    for (int k = 0; k <= d; ++k)
        for (int i = 0; i <= d; ++i)
            vander(k, i) = std::pow(nodes[k], d - i);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vander);
    auto const& sv = svd.singularValues();
    double const cond = sv(0) / sv(sv.size() - 1);
    if (!std::isfinite(cond) || cond > 1e8)
        throw std::domain_error("ill-conditioned Steiner fit: node spacing too "
                                "small");
    Eigen::MatrixXd const inv = vander.inverse();
    Eigen::VectorXd yv(d + 1);
    for (int k = 0; k <= d; ++k)
        yv(k) = y[k];
    Eigen::VectorXd const c = inv * yv;
    for (int i = 0; i <= d; ++i)
    {
        out.c[i] = c(i);
        double var = 0;
        for (int k = 0; k <= d; ++k)
            var += inv(i, k) * inv(i, k) * y_se[k] * y_se[k];
        out.se[i] = std::sqrt(var);
    }
    return out;
}

//---------------------------------------------------------------------------//
// Lemmas
//---------------------------------------------------------------------------//
bool half_space_empty(std::span<Vec const> centers,
                      std::span<double const> radii, Vec const& apex,
                      Vec const& normal)
{
    double const nn = norm(normal);
    if (!(nn > 0))
        throw std::invalid_argument("half-space normal must be nonzero");
    Vec const n = normal / nn;
    for (std::size_t k = 0; k < centers.size(); ++k)
    {
        double const r = radii.empty() ? 0.0 : radii[k];
        if (dot(centers[k] - apex, n) + r >= 0)
            return false;
    }
    return true;
}

bool in_contact_set(GaugeBody const& body, Vec const& z, Vec const& u, double t)
{
    if (t <= 0)
        return dot(z, z) == 0;
    return body.gauge(z - t * u) <= t;
}

ShrinkResult shrink_preserves_emptiness(std::span<Vec const> psi, double w,
                                        std::size_t i, double t, Vec const& u,
                                        GaugeBody const& body)
{
    if (std::abs(body.gauge(-u) - 1.0) > 1e-9)
        throw std::invalid_argument("u must lie on the boundary of B*");
    if (i >= psi.size())
        throw std::invalid_argument("point index out of range");
    if (!(w >= 0 && w <= 1) || !(t >= 0))
        throw std::invalid_argument("need w in [0, 1] and t >= 0");
    ShrinkResult res{1, 1};
    for (std::size_t j = 0; j < psi.size(); ++j)
    {
        if (j == i)
            continue;
        Vec const z = psi[j] - psi[i];
        if (dot(z, z) == 0)
            continue;
        if (in_contact_set(body, z, u, t))
            res.rhs = 0;
        Vec const wz = w * z;
        if (dot(wz, wz) > 0 && in_contact_set(body, wz, u, t))
            res.lhs = 0;
    }
    return res;
}

double entry_time(GaugeBody const& body, Vec const& z, double radius,
                  Vec const& u, double t_cap)
{
    double const zz = dot(z, z);
    if (zz <= radius * radius)
        return 0.0;
    if (auto const* b = body.get_if<gauge_shapes::Ball>())
    {
        double const denom = dot(z, u) + radius * b->radius;
        if (denom <= 0)
            return kInfinity;
        return (zz - radius * radius) / (2 * denom);
    }
    auto hit = [&](double t) {
        return distance_to_scaled(body, z - t * u, t) <= radius;
    };
    if (!hit(t_cap))
        return kInfinity;
    double lo = 0, hi = t_cap;
    for (int it = 0; it < kBisectionSteps; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        if (hit(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace emptyspace
