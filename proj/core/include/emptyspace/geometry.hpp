#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "emptyspace/laws.hpp"
#include "emptyspace/rng.hpp"
#include "emptyspace/scene.hpp"
#include "emptyspace/vec.hpp"

namespace emptyspace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace gauge_shapes {
struct Ball
{
    double radius;
};
struct Box
{
    Vec half_widths;
};
//! Convex polygon (d = 2), counterclockwise, origin strictly inside
struct Polygon
{
    std::vector<Vec> vertices;
    std::vector<Vec> normals;  //!< unit outer normal of edge k -> k+1
    std::vector<double> offsets;  //!< h_k = <normals[k], vertices[k]> > 0
};
//! Segment [0, end]; lower dimensional
struct Segment
{
    Vec end;
};
}  // namespace gauge_shapes

//---------------------------------------------------------------------------//
/*!
 * Compact convex structuring element B containing the origin.
 *
 * The B-distance from x to a set K is inf{t >= 0 : (x + tB) meets K}; for a
 * single point it is the Minkowski gauge of the displacement. The reflected
 * body B* = -B carries the contact directions.
 */
class GaugeBody
{
  public:
    using Variant = std::variant<gauge_shapes::Ball, gauge_shapes::Box,
                                 gauge_shapes::Polygon, gauge_shapes::Segment>;

    static GaugeBody ball(double radius = 1.0, int dim = 2);
    static GaugeBody box(Vec half_widths, int dim = 2);
    static GaugeBody polygon(std::vector<Vec> vertices);
    static GaugeBody segment(Vec end, int dim = 2);

    int dim() const { return dim_; }
    Variant const& variant() const { return v_; }
    template<class T>
    T const* get_if() const
    {
        return std::get_if<T>(&v_);
    }
    bool full_dimensional() const;
    bool is_ball() const { return get_if<gauge_shapes::Ball>() != nullptr; }

    //! inf{t >= 0 : x in tB}; infinite outside the cone spanned by B
    double gauge(Vec const& x) const;
    //! h_B(u) = max over b in B of <b, u>
    double support(Vec const& u) const;
    GaugeBody reflected() const;
    double volume() const;
    //! (d-1)-dimensional boundary measure (perimeter for d = 2)
    double surface_area() const;
    //! max |b| over b in B
    double circumradius() const;
    //! Half-widths of the axis-aligned box centered at 0 containing B
    Vec bounding_half_widths() const;

    bool contains(Vec const& x) const { return gauge(x) <= 1.0; }
    //! Nearest point of B to x (Euclidean)
    Vec closest_point(Vec const& x) const;
    //! Euclidean distance from x to B (0 inside)
    double distance_to(Vec const& x) const;
    //! Unit outer normal at a regular boundary point w
    Vec outer_normal(Vec const& w) const;

    std::string describe() const;

  private:
    GaugeBody(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}
    Variant v_;
    int dim_;
};

//! d_B(0, {x}): the gauge of x.
double gauge_distance(GaugeBody const& body, Vec const& x);

//! d_B(x, ball(center, radius)); 60 bisection steps for non-ball B.
double distance_to_ball(GaugeBody const& body, Vec const& x, Vec const& center,
                        double radius);

//! dist(z, tB) for t >= 0
double distance_to_scaled(GaugeBody const& body, Vec const& z, double t);

//---------------------------------------------------------------------------//
/*!
 * Finite partition of the contact directions.
 *
 * Angular partitions are [theta_i, theta_{i+1}) in the plane with the last
 * sector wrapping through angle 0. A half-space partition splits on the sign
 * of <u, n> (sector 0: <u, n> >= 0).
 */
class DirectionSectors
{
  public:
    enum class Kind
    {
        all,
        angular,
        half_space
    };

    static DirectionSectors all();
    static DirectionSectors angular(std::vector<double> boundaries);
    static DirectionSectors uniform_angular(int count);
    static DirectionSectors half_space(Vec normal);

    Kind kind() const { return kind_; }
    int count() const;
    int classify(Vec const& u) const;
    //! Fraction of a rotation invariant direction law falling in sector i
    double isotropic_fraction(int i) const;
    std::string label(int i) const;
    std::vector<double> const& boundaries() const { return boundaries_; }
    Vec const& normal() const { return normal_; }

  private:
    Kind kind_ = Kind::all;
    std::vector<double> boundaries_;
    Vec normal_;
};

//---------------------------------------------------------------------------//
//! Contact of a query point with a germ-grain scene.
struct Contact
{
    double distance = kInfinity;
    Vec direction;  //!< on the boundary of B*; convention value if covered
    int grain = -1;
    bool covered = false;
    bool tie = false;
};

//! Direction reported for covered points.
Vec covered_direction(GaugeBody const& body);

/*!
 * Spatial index answering B-contact queries on a torus scene.
 *
 * Grains farther than `reach` (Euclidean, from the query point to the grain
 * center) are ignored, so distances beyond reach_t are reported as infinite.
 */
class ContactIndex
{
  public:
    //! Consider contacts up to B-distance t_max
    ContactIndex(GermGrainScene const& scene, GaugeBody const& body,
                 double t_max);

    Contact query(Vec const& x) const;
    bool brute_force() const { return cells_per_axis_ == 0; }

  private:
    GermGrainScene const* scene_;
    GaugeBody const* body_;
    double reach_;
    double tie_tol_;
    int cells_per_axis_ = 0;
    double cell_size_ = 0;
    std::vector<std::uint32_t> cell_start_;
    std::vector<std::uint32_t> cell_items_;

    void consider(Vec const& x, std::uint32_t k, Contact& best) const;
};

//! Contact over all grains with minimum-image torus displacements.
Contact
scene_contact(GaugeBody const& body, Vec const& x, GermGrainScene const& scene);

//---------------------------------------------------------------------------//
//! Per-sector value of the direction measure nu_B.
struct NuMeasure
{
    std::vector<double> value;
    std::vector<double> se;
    double total = 0;
    double total_se = 0;
    bool exact = false;
};

//! d * V_d(B*), the total mass of nu_B.
double nu_total(GaugeBody const& body);

NuMeasure nu_measure(GaugeBody const& body, DirectionSectors const& sectors,
                     std::size_t samples, std::uint64_t seed);

//! Direction on the boundary of B* distributed as nu_B / nu_B(all).
Vec sample_nu_direction(GaugeBody const& body, RandomStream& rng);

//! As above conditioned on sector i (rejection).
Vec sample_nu_direction(GaugeBody const& body, DirectionSectors const& sectors,
                        int sector, RandomStream& rng);

//---------------------------------------------------------------------------//
/*!
 * Coefficients of H_B(t) = E V_d(X_0 + tB*) = sum_i c[i] t^(d-i).
 *
 * c[0] = V_d(B*) and c[d] = E V_d(X_0).
 */
struct SteinerCoefficients
{
    int dim = 2;
    std::vector<double> c;
    std::vector<double> se;
    bool exact = true;

    double value(double t) const;
    double derivative(double t) const;
};

enum class SteinerMethod
{
    automatic,
    monte_carlo
};

struct SteinerOptions
{
    SteinerMethod method = SteinerMethod::automatic;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    //! Fit node spacing; 0 picks a spacing from the body and radius scales
    double node_spacing = 0;
};

SteinerCoefficients steiner_coefficients_ball_grain(GaugeBody const& body,
                                                    RadiusLaw const& radius,
                                                    SteinerOptions const& opts
                                                    = {});

//---------------------------------------------------------------------------//
/*!
 * True iff no grain meets the closed half-space {z : <z - apex, n> >= 0}.
 *
 * `radii` may be empty for point sets.
 */
bool half_space_empty(std::span<Vec const> centers,
                      std::span<double const> radii, Vec const& apex,
                      Vec const& normal);

//! Emptiness indicators of a pattern around point i before and after scaling.
struct ShrinkResult
{
    int lhs;  //!< 1 if (w psi - w x_i) \ {0} misses tu + tB
    int rhs;  //!< 1 if (psi - x_i) \ {0} misses tu + tB
};

ShrinkResult shrink_preserves_emptiness(std::span<Vec const> psi, double w,
                                        std::size_t i, double t, Vec const& u,
                                        GaugeBody const& body);

//! True if z lies in t(u + B).
bool in_contact_set(GaugeBody const& body, Vec const& z, Vec const& u,
                    double t);

/*!
 * First t at which the ball (z, radius) meets t(u + B).
 *
 * Because u + B contains the origin the sets grow with t, so the indicator
 * "ball misses t(u + B)" equals 1{t < entry time}. Returns infinity if the
 * ball is still missed at t_cap (non-ball B) or never hit (ball B).
 */
double entry_time(GaugeBody const& body, Vec const& z, double radius,
                  Vec const& u, double t_cap = 1e6);

}  // namespace emptyspace
