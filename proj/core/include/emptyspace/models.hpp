#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "emptyspace/laws.hpp"
#include "emptyspace/rng.hpp"
#include "emptyspace/scene.hpp"
#include "emptyspace/vec.hpp"

namespace emptyspace {

using ClusterSizeLaw = CountingLaw;

namespace processes {
struct PoissonGerms
{
    double lambda;
};
struct NeymanScott
{
    double lambda_parent;
    ClusterSizeLaw size;
    ClusterPointLaw points;
};
//! Cluster {0} with probability 1 - p, else {0, Y}
struct GaussPoisson
{
    double lambda_parent;
    double p;
    ClusterPointLaw secondary;
};
/*!
 * Cluster given by an arbitrary sampler of offsets.
 *
 * The summary fields must describe the sampler's law: they drive the
 * intensity bookkeeping and the Palm sampler (rejection with acceptance
 * n / max_size). Not representable in the JSON config.
 */
struct GenericCluster
{
    double lambda_parent;
    std::string name;
    std::function<void(RandomStream&, int, std::vector<Vec>&)> sampler;
    double mean_size;
    double prob_nonempty;
    int max_size;
    double extent;
};
struct MixedPoisson
{
    IntensityLaw mixing;
};
}  // namespace processes

//---------------------------------------------------------------------------//
/*!
 * Germ process plus i.i.d. ball grains on a periodic window.
 */
struct ProcessSpec
{
    using Variant
        = std::variant<processes::PoissonGerms, processes::NeymanScott,
                       processes::GaussPoisson, processes::GenericCluster,
                       processes::MixedPoisson>;

    Variant process;
    RadiusLaw grain_radius = RadiusLaw::degenerate(0.0);
    double window = 20.0;
    int dimension = 2;

    template<class T>
    T const* get_if() const
    {
        return std::get_if<T>(&process);
    }

    //! Germ intensity lambda (E[Lambda] for mixed Poisson)
    double intensity() const;
    //! lambda_Pi for cluster processes, lambda otherwise
    double parent_intensity() const;
    //! gamma = E card L_0 (1 for non-cluster specs)
    double mean_cluster_size() const;
    //! P(L_0 nonempty) = 1 - g(0)
    double prob_nonempty() const;
    //! Radius holding essentially all cluster offsets
    double cluster_extent() const;
    bool is_cluster() const;
    bool point_grains() const { return grain_radius.is_zero(); }

    //! Throws std::invalid_argument on inconsistent parameters
    void validate() const;
    std::string describe() const;
};

ProcessSpec boolean_spec(double lambda, RadiusLaw radius, double window = 20,
                         int dim = 2);
ProcessSpec neyman_scott_spec(double lambda_parent, ClusterSizeLaw size,
                              ClusterPointLaw points, RadiusLaw radius,
                              double window = 20, int dim = 2);
ProcessSpec gauss_poisson_spec(double lambda_parent, double p,
                               ClusterPointLaw secondary, RadiusLaw radius,
                               double window = 20, int dim = 2);
ProcessSpec mixed_poisson_spec(IntensityLaw mixing, RadiusLaw radius,
                               double window = 20, int dim = 2);

/*!
 * Neyman-Scott cluster scaled by an independent factor W.
 *
 * W is drawn first, as quantile(U) from the cluster's own stream, so two
 * specs differing only in the scale law are coupled monotonically under a
 * common seed.
 */
ProcessSpec scaled_cluster_spec(double lambda_parent, ClusterSizeLaw size,
                                ClusterPointLaw points, ScaleLaw scale,
                                RadiusLaw radius, double window = 20,
                                int dim = 2);

//! Warning text if cluster scale plus t_max exceeds a quarter window.
std::optional<std::string> window_warning(ProcessSpec const& spec,
                                          double t_max);

//---------------------------------------------------------------------------//
// Samplers
//---------------------------------------------------------------------------//
std::vector<Vec>
sample_poisson_pattern(double lambda, double side, int dim, std::uint64_t seed);

//! Offsets of one cluster: eta draws from `size`, then eta i.i.d. offsets.
void sample_cluster(ClusterSizeLaw const& size, ClusterPointLaw const& points,
                    int dim, RandomStream& rng, std::vector<Vec>& out);

//! Offsets of one typical cluster L_0 of a cluster-type spec (may be empty).
void sample_typical_cluster(ProcessSpec const& spec, RandomStream& rng,
                            std::vector<Vec>& out);

//! Scene for replication `replication` of (spec, seed).
GermGrainScene
sample_scene(ProcessSpec const& spec, std::uint64_t seed,
             std::uint64_t replication = 0);

//! Typical cluster seen from a size-biased chosen point.
struct PalmCluster
{
    Vec chosen;  //!< offset of the chosen point in the cluster frame
    std::vector<Vec> others;  //!< remaining points minus the chosen one
};

//! Y_0: the other Palm cluster points with i.i.d. grains attached.
struct GrainSet
{
    std::vector<Vec> centers;
    std::vector<double> radii;

    bool empty() const { return centers.empty(); }
};

//---------------------------------------------------------------------------//
/*!
 * Palm sampler for the typical cluster of a cluster-type spec.
 *
 * The chosen point is size-biased: a cluster of size n is picked with weight
 * n P(eta = n) / gamma and then one of its points uniformly. Neyman-Scott
 * sizes come from the shifted length-biased law, Gauss-Poisson enumerates
 * its two cluster types, and generic clusters use rejection.
 */
class PalmSampler
{
  public:
    explicit PalmSampler(ProcessSpec const& spec);

    void sample(RandomStream& rng, PalmCluster& out) const;
    //! Y_0 built from a fresh Palm cluster; `work` is scratch space
    void sample_Y0(RandomStream& rng, PalmCluster& work, GrainSet& out) const;

  private:
    ProcessSpec spec_;
    std::optional<CountingLaw> biased_;
};

void sample_typical_cluster_palm(ProcessSpec const& spec, RandomStream& rng,
                                 PalmCluster& out);

void sample_Y0(ProcessSpec const& spec, RandomStream& rng, GrainSet& out);

}  // namespace emptyspace
