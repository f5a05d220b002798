#include "ranai/agent/model_io.hpp"
#include "ranai/io/experiment.hpp"
#include "ranai/io/figdata.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using ranai::RunConfig;
using nlohmann::json;

struct CommonFlags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string policy;
    std::string mechanism;
    std::optional<std::size_t> numUes;
    std::vector<std::uint64_t> seeds;
};

void
AddCommon(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("-c,--config", f.config, "run configuration (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("-s,--seed", f.seed, "override the seed");
    cmd->add_option("-o,--out", f.out, "output directory (overrides output_dir)");
    cmd->add_option("--policy", f.policy, "override the policy: dql or constant:<mode>");
    cmd->add_option("--mechanism", f.mechanism, "override the notification mechanism");
    cmd->add_option("--num-ues", f.numUes, "override the number of vehicles");
}

void
AddSeedList(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--seeds", f.seeds, "run once per seed, each into <out>/seed-<n>")
        ->delimiter(',')
        ->excludes("--seed");
}

// One flag set per requested seed; a single entry when no list was given.
std::vector<CommonFlags>
ExpandSeeds(const CommonFlags& f, const std::string& defaultOut)
{
    if (f.seeds.empty())
    {
        return {f};
    }
    const std::filesystem::path base = f.out.empty() ? defaultOut : f.out;
    std::vector<CommonFlags> out;
    for (auto seed : f.seeds)
    {
        CommonFlags one = f;
        one.seeds.clear();
        one.seed = seed;
        one.out = (base / ("seed-" + std::to_string(seed))).string();
        out.push_back(one);
    }
    return out;
}

RunConfig
Resolve(const CommonFlags& f)
{
    json doc = json::object();
    if (!f.config.empty())
    {
        std::ifstream in(f.config);
        try
        {
            doc = json::parse(in);
        }
        catch (const json::parse_error& e)
        {
            throw ranai::ConfigError({f.config + ": " + e.what()});
        }
    }
    if (f.seed)
    {
        doc["seed"] = *f.seed;
    }
    if (!f.out.empty())
    {
        doc["output_dir"] = f.out;
    }
    if (!f.policy.empty())
    {
        doc["policy"] = f.policy;
    }
    if (!f.mechanism.empty())
    {
        doc["controller"]["mechanism"] = f.mechanism;
    }
    if (f.numUes)
    {
        doc["scenario"]["num_ues"] = *f.numUes;
    }
    return ranai::ParseRunConfig(doc);
}

void
PrintSummary(const ranai::Summary& s)
{
    std::cout << "windows " << s.windows << "  mean QoE " << s.meanQoe << "  mean reward "
              << s.meanReward << "\n"
              << "delay ms: mean " << s.delay.meanMs << "  p25 " << s.delay.p25Ms << "  p50 "
              << s.delay.p50Ms << "  p75 " << s.delay.p75Ms << "  p95 " << s.delay.p95Ms << "\n"
              << "PRR pooled " << s.prrPooled << "  QoS violations " << s.qosViolationFraction
              << "\n";
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Teleoperated-driving V2X simulator with a RAN-side learning controller"};
    app.require_subcommand(1);

    CommonFlags runFlags, trainFlags, evalFlags, validateFlags;
    auto* run = app.add_subcommand("run", "run one episode with the configured policy");
    AddCommon(run, runFlags);
    AddSeedList(run, runFlags);

    auto* train = app.add_subcommand("train", "train the agent, then evaluate it greedily");
    AddCommon(train, trainFlags);
    AddSeedList(train, trainFlags);
    std::size_t episodes = 50;
    train->add_option("-e,--episodes", episodes, "training episodes")->capture_default_str();
    std::string agentCmd;
    train->add_option("--agent-cmd", agentCmd, "external agent command (NDJSON over stdio)");

    auto* eval = app.add_subcommand("eval", "evaluate a saved model with exploration off");
    AddCommon(eval, evalFlags);
    std::string modelPath;
    eval->add_option("-m,--model", modelPath, "model file")->required()->check(CLI::ExistingFile);

    auto* fig = app.add_subcommand("figdata", "collect delay and PRR distributions from run directories");
    std::vector<std::string> runDirs;
    std::string figOut = "figdata";
    fig->add_option("runs", runDirs, "run output directories")->required();
    fig->add_option("-o,--out", figOut, "output directory")->capture_default_str();

    auto* validate = app.add_subcommand("validate-config", "check a configuration and print it resolved");
    AddCommon(validate, validateFlags);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            const auto base = Resolve(runFlags).outputDir;
            for (const auto& f : ExpandSeeds(runFlags, base))
            {
                const auto cfg = Resolve(f);
                const auto a = ranai::Run(cfg, cfg.outputDir);
                std::cout << "seed " << cfg.seed << " -> " << cfg.outputDir << "\n";
                PrintSummary(a.summary);
            }
        }
        else if (*train)
        {
            const auto base = Resolve(trainFlags).outputDir;
            for (const auto& f : ExpandSeeds(trainFlags, base))
            {
                auto cfg = Resolve(f);
                if (!agentCmd.empty())
                {
                    cfg.agent.remoteCommand = agentCmd;
                }
                ranai::TrainOptions opts;
                opts.episodes = episodes;
                opts.outDir = cfg.outputDir;
                opts.progress = [episodes](std::size_t k, const ranai::Summary& s) {
                    std::cerr << "episode " << (k + 1) << "/" << episodes << "  QoE " << s.meanQoe
                              << "  delay " << s.delay.meanMs << " ms  reward " << s.meanReward
                              << "\n";
                };
                const auto a = ranai::TrainThenEval(cfg, opts);
                std::cout << "seed " << cfg.seed << " -> " << cfg.outputDir << "\n";
                PrintSummary(a.summary);
            }
        }
        else if (*eval)
        {
            auto cfg = Resolve(evalFlags);
            const auto net = ranai::LoadModelFile(modelPath, cfg.agent.hyper.layers);
            const auto a = ranai::Evaluate(cfg, net, cfg.outputDir);
            PrintSummary(a.summary);
        }
        else if (*fig)
        {
            std::vector<std::filesystem::path> dirs(runDirs.begin(), runDirs.end());
            const auto c = ranai::EmitFigureData(dirs, figOut);
            std::cout << "delay rows " << c.delayRows << ", prr rows " << c.prrRows << "\n";
        }
        else if (*validate)
        {
            const auto cfg = Resolve(validateFlags);
            std::cout << ranai::ToJson(cfg).dump(2) << "\n";
        }
    }
    catch (const ranai::ConfigError& e)
    {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
