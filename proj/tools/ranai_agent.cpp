// Serves the built-in Double-DQN agent over stdin/stdout using the NDJSON
// bridge protocol. Handy for exercising the remote-agent path end to end.
#include "ranai/agent/model_io.hpp"
#include "ranai/bridge/remote_agent.hpp"
#include "ranai/io/run_config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <unistd.h>

int
main(int argc, char** argv)
{
    CLI::App app{"Built-in agent behind the NDJSON bridge (stdio)"};
    std::string config, model;
    std::uint64_t seed = 1;
    app.add_option("-c,--config", config, "run configuration supplying agent hyperparameters");
    app.add_option("-m,--model", model, "model file to start from");
    app.add_option("-s,--seed", seed, "agent seed")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try
    {
        ranai::AgentHyperparams hp;
        if (!config.empty())
        {
            hp = ranai::LoadRunConfig(config).agent.hyper;
        }
        ranai::DqnAgent agent(hp, seed);
        if (!model.empty())
        {
            agent.LoadNetwork(ranai::LoadModelFile(model, hp.layers));
        }
        ranai::bridge::LineChannel channel(STDIN_FILENO, STDOUT_FILENO);
        ranai::bridge::ServeAgent(channel, agent, [&agent](const std::string& path) {
            ranai::SaveModelFile(path, agent.Online());
        });
    }
    catch (const std::exception& e)
    {
        std::cerr << "ranai_agent: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
