#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "emptyspace/config.hpp"
#include "emptyspace/experiment.hpp"

using namespace emptyspace;

namespace {

struct Args
{
    std::string config;
    bool check = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string fault;
};

void add_common(CLI::App* sub, Args& a, bool config_required)
{
    auto* c = sub->add_option("--config", a.config, "Experiment config (JSON)");
    if (config_required)
        c->required()->check(CLI::ExistingFile);
    else
        c->check(CLI::ExistingFile);
    sub->add_flag("--check", a.check, "Fail with exit code 3 when a comparison does not hold");
    sub->add_option("--seed", a.seed, "Master seed (overrides the config)");
    sub->add_option("--out", a.out, "Output directory (overrides the config)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Empty space hazard rates of germ-grain models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EMPTYSPACE_VERSION);

    Args args;
    struct Entry
    {
        char const* name;
        char const* help;
        ExperimentKind kind;
    };
    Entry const entries[] = {
        {"estimate", "Simulate scenes and estimate the hazard", ExperimentKind::estimate},
        {"analytic", "Evaluate hazard formulas", ExperimentKind::analytic},
        {"compare", "Compare the hazards of two models", ExperimentKind::compare},
        {"order-check", "Check a stochastic order between two laws", ExperimentKind::order_check},
        {"asymptotics", "Small and large t limits of the hazard", ExperimentKind::asymptotics},
        {"reduction-suite", "Run the internal consistency checks", ExperimentKind::reduction_suite},
    };
    for (auto const& e : entries)
    {
        auto* sub = app.add_subcommand(e.name, e.help);
        bool const suite = e.kind == ExperimentKind::reduction_suite;
        add_common(sub, args, !suite);
        if (suite)
            sub->add_option("--fault", args.fault)->group("");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    ExperimentKind kind = ExperimentKind::estimate;
    for (auto const& e : entries)
        if (app.got_subcommand(e.name))
            kind = e.kind;

    ExperimentConfig config;
    if (!args.config.empty())
    {
        try
        {
            config = load_config(args.config);
        }
        catch (ConfigError const& e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return kExitInvalid;
        }
    }

    RunOptions opts;
    opts.check = args.check;
    opts.seed = args.seed;
    opts.out = args.out;
    opts.fault = args.fault;
    opts.log = &std::cout;
    auto const res = run_experiment(kind, std::move(config), opts);
    return res.exit_code;
}
