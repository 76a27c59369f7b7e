#include "zonoreach/experiment.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Data-driven reachable-set computation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<int> reduce_order;
    std::optional<std::string> output;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--samples", samples, "override the Monte Carlo sample count");
    run->add_option("--reduce-order", reduce_order, "override the zonotope reduction order");
    run->add_option("--output", output, "override the output directory");

    CLI::App* plot = app.add_subcommand("plot", "render SVG projections for a finished run");
    plot->add_option("dir", run_dir, "run output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
        {
            std::ifstream in(config_path);
            if (!in)
            {
                std::cerr << "config error: cannot open " << config_path << "\n";
                return 1;
            }
            nlohmann::json j;
            try
            {
                in >> j;
            }
            catch (const std::exception& e)
            {
                std::cerr << "config error: invalid JSON: " << e.what() << "\n";
                return 1;
            }
            if (seed)
                j["seed"] = *seed;
            if (samples)
                j["samples"] = *samples;
            if (reduce_order)
                j["reduction_order"] = *reduce_order;
            if (output)
                j["output"] = *output;

            zonoreach::ExperimentConfig cfg;
            try
            {
                cfg = zonoreach::ExperimentConfig::from_json(j);
            }
            catch (const zonoreach::ConfigError& e)
            {
                std::cerr << "config error: " << e.what() << "\n";
                return 1;
            }
            return zonoreach::run_experiment(cfg, cfg.output, std::cout);
        }
        zonoreach::plot_run(run_dir, std::cout);
        return 0;
    }
    catch (const zonoreach::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
