#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "emptyspace/geometry.hpp"
#include "emptyspace/models.hpp"
#include "emptyspace/scene.hpp"
#include "emptyspace/verdict.hpp"

namespace emptyspace {

//! n evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

struct EstimatorConfig
{
    std::vector<double> t_grid;
    int resolution = 256;  //!< query points per axis
    int replications = 100;
    DirectionSectors sectors = DirectionSectors::all();
    std::uint64_t seed = 1;

    //! Throws std::invalid_argument if unusable on a window of this side
    void validate(double side, GaugeBody const& body) const;
};

//---------------------------------------------------------------------------//
/*!
 * Per-scene empty space table.
 *
 * Column 0 is the total F(t) (covered points included); column 1 + i is the
 * directed F(t, C_i), which excludes covered points.
 */
struct FTable
{
    std::vector<double> t;
    std::vector<std::vector<double>> F;  //!< [column][t index]
    std::size_t ties = 0;
};

FTable estimate_F(GermGrainScene const& scene, GaugeBody const& body,
                  EstimatorConfig const& config, Vec const& jitter);

//! Uses the jitter owned by (config.seed, replication).
FTable estimate_F(GermGrainScene const& scene, GaugeBody const& body,
                  EstimatorConfig const& config, std::uint64_t replication = 0);

//---------------------------------------------------------------------------//
/*!
 * Tabulated empty space function and hazard, simulated or analytic.
 *
 * Columns follow FTable: 0 is "all", 1 + i is sector i. Standard errors are
 * NaN when not available (a single replication, or a closed form for F).
 */
struct HazardCurve
{
    std::vector<double> t;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> F, F_se, f, r, r_se;
    std::vector<char> masked;  //!< per t: 1 - F(t) below the mask level
    std::vector<double> r_log;  //!< total hazard from -d log(1 - F)
    std::string method = "estimate";
    std::size_t replications = 0;
    std::size_t clip_events = 0;
    std::size_t ties = 0;
    std::size_t inner_samples = 0;
    std::map<std::string, std::string> meta;

    int columns() const { return static_cast<int>(labels.size()); }
    double survival(std::size_t k) const { return 1 - F[0][k]; }
};

inline constexpr double kMaskSurvival = 0.02;

struct HazardColumns
{
    std::vector<std::vector<double>> F;  //!< after isotonic clipping
    std::vector<std::vector<double>> f;
    std::vector<std::vector<double>> r;
    std::vector<char> masked;
    std::vector<double> r_log;
    std::size_t clip_events = 0;
};

//! Differencing of F tables (column 0 must be the total) into hazards.
HazardColumns hazard_from_survival(std::vector<double> const& t,
                                   std::vector<std::vector<double>> const& F);

HazardCurve pool_replications(ProcessSpec const& spec, GaugeBody const& body,
                              EstimatorConfig const& config);

/*!
 * Check r_a >= r_b - slack (se_a + se_b) at every (t, column) unmasked in
 * both curves. The margin is the smallest r_a - r_b seen.
 */
OrderingVerdict empirical_hazard_order(HazardCurve const& a,
                                       HazardCurve const& b, double slack = 3);

}  // namespace emptyspace
