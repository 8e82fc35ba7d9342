#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emptyspace/estimator.hpp"
#include "emptyspace/geometry.hpp"
#include "emptyspace/laws.hpp"
#include "emptyspace/models.hpp"
#include "emptyspace/verdict.hpp"

namespace emptyspace {

/*!
 * Hazard tabulated from a formula rather than from simulated scenes.
 *
 * Same layout as an estimated curve. `method` is "closed" when every entry
 * is exact and "semi-MC" when an inner Monte Carlo estimate is involved (its
 * standard errors are in r_se). F, f and the mask come from integrating the
 * total hazard from the volume fraction (or from the exact survival when
 * one is known), so the same 1 - F thresholds apply to both kinds of curve.
 */
using AnalyticHazard = HazardCurve;

enum class InnerMethod
{
    automatic,  //!< quadrature where available, Monte Carlo otherwise
    monte_carlo
};

struct AnalyticOptions
{
    std::size_t inner_samples = 100'000;
    //! (x, u) pairs for the Neyman-Scott and Gauss-Poisson Monte Carlo paths
    std::size_t outer_samples = 400;
    std::uint64_t seed = 1;
    InnerMethod method = InnerMethod::automatic;
    //! Monte Carlo samples for nu_B when B is not a ball
    std::size_t nu_samples = 1'000'000;
    SteinerOptions steiner;
    //! Clusters used for the union volume of a cluster volume fraction
    std::size_t volume_samples = 20'000;
};

//---------------------------------------------------------------------------//
// Hazards
//---------------------------------------------------------------------------//
AnalyticHazard boolean_hazard(double lambda, RadiusLaw const& radius,
                              GaugeBody const& body,
                              std::vector<double> const& t,
                              DirectionSectors const& sectors,
                              AnalyticOptions const& opts = {});

//! Point-grain cluster process via the Palm cluster (any cluster type).
AnalyticHazard poisson_cluster_hazard(ProcessSpec const& spec,
                                      GaugeBody const& body,
                                      std::vector<double> const& t,
                                      DirectionSectors const& sectors,
                                      AnalyticOptions const& opts = {});

//! Point-grain Neyman-Scott process through the size pgf derivative.
AnalyticHazard neyman_scott_hazard(double lambda_parent,
                                   ClusterSizeLaw const& size,
                                   ClusterPointLaw const& points,
                                   GaugeBody const& body,
                                   std::vector<double> const& t,
                                   DirectionSectors const& sectors,
                                   AnalyticOptions const& opts = {});

//! Point-grain Gauss-Poisson process, exact in p.
AnalyticHazard gauss_poisson_hazard(double lambda_parent, double p,
                                    ClusterPointLaw const& secondary,
                                    GaugeBody const& body,
                                    std::vector<double> const& t,
                                    DirectionSectors const& sectors,
                                    AnalyticOptions const& opts = {});

/*!
 * Cluster process with ball grains.
 *
 * K_{i,B}(t, C) is estimated from Palm clusters: a grain radius R, a
 * direction u, the boundary point x of the grain with normal direction u,
 * and the entry time of Y_0 - x into t(u + B). For B a ball the direction
 * split is exact; otherwise u follows nu_B and the curve is tagged
 * "direction-split: approximate".
 */
AnalyticHazard cluster_germ_grain_hazard(ProcessSpec const& spec,
                                         GaugeBody const& body,
                                         std::vector<double> const& t,
                                         DirectionSectors const& sectors,
                                         AnalyticOptions const& opts = {});

AnalyticHazard mixed_poisson_hazard(IntensityLaw const& mixing,
                                    RadiusLaw const& radius,
                                    GaugeBody const& body,
                                    std::vector<double> const& t,
                                    DirectionSectors const& sectors,
                                    AnalyticOptions const& opts = {});

//! Picks the formula matching the spec's process type and grains.
AnalyticHazard analytic_hazard(ProcessSpec const& spec, GaugeBody const& body,
                               std::vector<double> const& t,
                               DirectionSectors const& sectors,
                               AnalyticOptions const& opts = {});

//---------------------------------------------------------------------------//
/*!
 * Per-sector estimates of K_{i,B}(t, C) for i = 0..d-1.
 *
 * Non-cluster specs give the exact values (the sector fraction). Rows with
 * a vanishing Steiner coefficient (i >= 1 for point grains) are left at 0
 * and flagged unused.
 */
struct KTable
{
    std::vector<double> t;
    std::vector<std::string> labels;
    //! [i][column][t index]
    std::vector<std::vector<std::vector<double>>> K, se;
    std::vector<char> used;  //!< per i
    std::size_t samples = 0;
};

KTable k_table(ProcessSpec const& spec, GaugeBody const& body,
               std::vector<double> const& t, DirectionSectors const& sectors,
               AnalyticOptions const& opts = {});

//! Pointwise K_a >= K_b - slack (se_a + se_b), the sufficient hazard condition.
OrderingVerdict k_table_order(KTable const& a, KTable const& b,
                              double slack = 3);

//---------------------------------------------------------------------------//
/*!
 * Limits of the hazard at small and large t, per column.
 *
 * For point grains `small_t` is lim t^{1-d} r(t, C); with ball grains it is
 * lim r(t, C) (the hazard itself stays finite at 0 and t^{1-d} r diverges).
 * `large_t` is always lim t^{1-d} r(t, C).
 */
struct AsymptoticLimits
{
    std::vector<std::string> labels;
    std::vector<double> small_t, small_se;
    std::vector<double> large_t, large_se;
    std::vector<double> nu;  //!< nu_B(C) per column
    bool small_scaled = true;
    std::string method = "closed";
};

AsymptoticLimits asymptotic_limits(ProcessSpec const& spec,
                                   GaugeBody const& body,
                                   DirectionSectors const& sectors,
                                   AnalyticOptions const& opts = {});

//---------------------------------------------------------------------------//
struct VolumeFraction
{
    double value = 0;
    double se = 0;
    bool exact = true;
};

/*!
 * P(0 in Z).
 *
 * Boolean and mixed Poisson models are exact. Cluster models are treated as
 * a Boolean model whose grain is the union of one cluster's grains, with
 * E V_d(union) estimated by hit-or-miss over sampled clusters.
 */
VolumeFraction volume_fraction(ProcessSpec const& spec,
                               AnalyticOptions const& opts = {});

/*!
 * Grain scaling in Boolean models: E[R^i] >= E[R~^i] for i = 1..d-1 is
 * sufficient for the hazard of R to dominate. Not meeting it proves nothing,
 * so the verdict is "yes" or "undetermined", never "no".
 */
OrderingVerdict boolean_grain_scaling_order(RadiusLaw const& r,
                                            RadiusLaw const& r_tilde, int dim);

}  // namespace emptyspace
