#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emptyspace/config.hpp"

namespace emptyspace {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCheckFailed = 3;

struct RunOptions
{
    bool check = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    //! Name of a formula to perturb (reduction suite only); empty for none
    std::string fault;
    //! Progress and result lines go here; null for silence
    std::ostream* log = nullptr;
};

struct RunResult
{
    int exit_code = kExitOk;
    std::vector<std::string> artifacts;  //!< paths relative to the output dir
    std::vector<std::string> failures;
};

/*!
 * Validate, run and write artifacts for one experiment.
 *
 * Validation problems give exit code 2 and write nothing. In check mode a
 * failed comparison gives 3; a failed reduction suite always does.
 */
RunResult run_experiment(ExperimentKind kind, ExperimentConfig config,
                         RunOptions const& opts);

//---------------------------------------------------------------------------//
struct SuiteCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

//! Names accepted by the fault hook of reduction_suite.
std::vector<std::string> const& suite_fault_names();

/*!
 * Cross checks between the analytic formulas, their reductions to one
 * another and the estimator. Deterministic per seed.
 */
std::vector<SuiteCheck> reduction_suite(std::uint64_t seed,
                                        std::string const& fault = {});

std::string suite_json(std::vector<SuiteCheck> const& checks);

}  // namespace emptyspace
