#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emptyspace/analytic.hpp"
#include "emptyspace/estimator.hpp"
#include "emptyspace/geometry.hpp"
#include "emptyspace/laws.hpp"
#include "emptyspace/models.hpp"

namespace emptyspace {

enum class ExperimentKind
{
    estimate,
    analytic,
    compare,
    order_check,
    asymptotics,
    reduction_suite
};

std::string to_string(ExperimentKind k);
//! Accepts the CLI spelling ("order-check") and the enum spelling.
ExperimentKind parse_experiment_kind(std::string const& s);

//! Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
//! Law pair for an order-check run.
struct OrderCheckSpec
{
    //! "l-g", "cum", "st" or "grain-scaling"
    std::string order;
    std::optional<CountingLaw> count_a, count_b;
    std::optional<ScalarLaw> scalar_a, scalar_b;
    int dimension = 2;  //!< grain-scaling only
};

/*!
 * Everything one run needs.
 *
 * JSON layout (unknown keys anywhere are errors):
 *   kind, seed, output, models: [ProcessSpec...], names: [..], gauge,
 *   sectors, estimator {t_grid, resolution, replications}, analytic
 *   {inner_samples, outer_samples, volume_samples, method}, order {...}
 */
struct ExperimentConfig
{
    std::optional<ExperimentKind> kind;
    std::uint64_t seed = 1;
    std::string output = "out";
    std::vector<ProcessSpec> models;
    std::vector<std::string> names;
    GaugeBody gauge = GaugeBody::ball(1.0, 2);
    DirectionSectors sectors = DirectionSectors::all();
    EstimatorConfig estimator;
    AnalyticOptions analytic;
    std::optional<OrderCheckSpec> order;

    //! Throws ConfigError if the config cannot drive a run of `kind`.
    void validate(ExperimentKind kind) const;
    std::string model_name(std::size_t i) const;
};

ExperimentConfig parse_config(std::string const& json_text);
ExperimentConfig load_config(std::string const& path);
//! Canonical JSON; parse(serialize(c)) reproduces c.
std::string serialize_config(ExperimentConfig const& config);

//! JSON text for single objects, shared with reports.
std::string serialize_spec(ProcessSpec const& spec);
ProcessSpec parse_spec(std::string const& json_text);

//! 64-bit FNV-1a of a string, hex encoded.
std::string fnv1a_hex(std::string const& text);

}  // namespace emptyspace
