#include "ranai/io/experiment.hpp"

#include "ranai/agent/model_io.hpp"
#include "ranai/bridge/remote_agent.hpp"
#include "ranai/util/csv.hpp"

#include <fstream>

namespace ranai {

namespace fs = std::filesystem;

namespace {

std::ofstream
OpenOut(const fs::path& p)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot write " + p.string());
    }
    return out;
}

/// Episode streams backed by files in one directory.
class Bundle
{
  public:
    Bundle(const RunConfig& cfg, const fs::path& dir)
        : m_dir(dir)
    {
        fs::create_directories(dir);
        m_stats = OpenOut(dir / "stats.csv");
        WriteStatsHeader(m_stats);
        m_streams.stats = &m_stats;
        if (cfg.outputs.controllerLog)
        {
            m_controller = OpenOut(dir / "controller.csv");
            m_streams.controller = &m_controller;
        }
        if (cfg.outputs.cellLog)
        {
            m_cell = OpenOut(dir / "cell.csv");
            m_streams.cell = &m_cell;
        }
        if (cfg.outputs.bursts)
        {
            m_bursts = OpenOut(dir / "bursts.csv");
            WriteBurstsHeader(m_bursts);
            m_streams.bursts = &m_bursts;
        }
        if (cfg.outputs.ttiLog)
        {
            m_tti = OpenOut(dir / "tti.csv");
            m_tti << "t,ue,share,snr_dB,buffer_bytes,served_bytes\n";
            m_streams.tti = &m_tti;
        }
    }

    const EpisodeStreams& Streams() const { return m_streams; }

    void Finish(const RunConfig& cfg, std::uint64_t envSeed, const RunArtifacts& a)
    {
        {
            auto out = OpenOut(m_dir / "notifications.csv");
            RanAiController::WriteNotificationCsv(out, a.result.notifications);
        }
        {
            auto out = OpenOut(m_dir / "run_config.json");
            out << ToJson(cfg).dump(2) << '\n';
        }
        {
            nlohmann::json doc;
            doc["seed"] = cfg.seed;
            doc["env_seed"] = envSeed;
            doc["config"] = ToJson(cfg);
            doc["metrics"] = ToJson(a.summary, cfg.app.modes);
            auto out = OpenOut(m_dir / "summary.json");
            out << doc.dump(2) << '\n';
        }
        if (cfg.outputs.channelTrace)
        {
            auto out = OpenOut(m_dir / "channel_trace.csv");
            WriteTrace(out, BuildChannelTrace(cfg, envSeed));
        }
        if (a.model)
        {
            SaveModelFile((m_dir / "model.txt").string(), *a.model);
        }
    }

  private:
    fs::path m_dir;
    std::ofstream m_stats, m_controller, m_cell, m_bursts, m_tti;
    EpisodeStreams m_streams;
};

bridge::RemoteAgentConfig
RemoteConfig(const RunConfig& cfg)
{
    bridge::RemoteAgentConfig rc;
    rc.runId = "seed-" + std::to_string(cfg.seed);
    rc.numUsers = cfg.scenario.numUes;
    rc.stateDim = kStateFeatures;
    rc.numActions = cfg.app.modes.Size();
    rc.timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(std::llround(cfg.agent.remoteTimeoutSeconds * 1e3)));
    return rc;
}

RunArtifacts
RunOne(const RunConfig& cfg,
       const fs::path& outDir,
       EpisodeOptions opts,
       std::optional<QNetwork> model)
{
    RunArtifacts a;
    std::unique_ptr<Bundle> bundle;
    if (!outDir.empty())
    {
        bundle = std::make_unique<Bundle>(cfg, outDir);
        opts.streams = bundle->Streams();
    }
    a.result = RunEpisode(cfg, opts);
    a.summary = Summarize(cfg, a.result);
    a.model = std::move(model);
    if (bundle)
    {
        bundle->Finish(cfg, opts.envSeed, a);
    }
    return a;
}

} // namespace

RunArtifacts
Run(const RunConfig& cfg, const fs::path& outDir)
{
    cfg.Validate();
    EpisodeOptions opts;
    opts.envSeed = cfg.seed;
    if (cfg.policy.kind == Policy::Kind::Constant)
    {
        return RunOne(cfg, outDir, opts, std::nullopt);
    }

    const bool training = cfg.agent.mode == AgentMode::Train;
    opts.learn = training;
    opts.explore = training;
    if (!cfg.agent.remoteCommand.empty())
    {
        auto remote = bridge::RemoteAgent::Spawn(cfg.agent.remoteCommand, RemoteConfig(cfg));
        opts.agent = remote.get();
        auto a = RunOne(cfg, outDir, opts, std::nullopt);
        if (training && !outDir.empty())
        {
            remote->Save(fs::absolute(outDir / "model.txt").string());
        }
        remote->Shutdown();
        return a;
    }

    if (!training && cfg.agent.modelPath.empty())
    {
        throw ConfigError({"agent.model_path: required to evaluate the built-in agent"});
    }
    DqnAgent agent(cfg.agent.hyper, cfg.seed);
    if (!cfg.agent.modelPath.empty())
    {
        agent.LoadNetwork(LoadModelFile(cfg.agent.modelPath, cfg.agent.hyper.layers));
    }
    std::ofstream trainingLog;
    if (training && !outDir.empty())
    {
        fs::create_directories(outDir);
        trainingLog = OpenOut(outDir / "training_log.csv");
        trainingLog << "update_idx,loss,epsilon,meanQ\n";
        opts.onTraining = [&trainingLog](const LossReport& r) {
            trainingLog << r.updateIndex << ',' << FormatDouble(r.loss) << ','
                        << FormatDouble(r.epsilon) << ',' << FormatDouble(r.meanQ) << '\n';
        };
    }
    opts.agent = &agent;
    // Keep the run reproducible from the bundle alone: the network used is
    // always saved next to the results.
    return RunOne(cfg, outDir, opts, agent.Online());
}

RunArtifacts
TrainThenEval(const RunConfig& cfg, const TrainOptions& topts)
{
    cfg.Validate();
    if (cfg.policy.kind != Policy::Kind::Dql)
    {
        throw std::invalid_argument("training requires the dql policy");
    }
    RunConfig trainCfg = cfg;
    trainCfg.agent.mode = AgentMode::Train;
    trainCfg.agent.modelPath.clear();

    std::unique_ptr<DqnAgent> local;
    std::unique_ptr<bridge::RemoteAgent> remote;
    AgentInterface* agent = nullptr;
    if (!cfg.agent.remoteCommand.empty())
    {
        remote = bridge::RemoteAgent::Spawn(cfg.agent.remoteCommand, RemoteConfig(cfg));
        agent = remote.get();
    }
    else
    {
        local = std::make_unique<DqnAgent>(cfg.agent.hyper, cfg.seed);
        if (!cfg.agent.modelPath.empty())
        {
            local->LoadNetwork(LoadModelFile(cfg.agent.modelPath, cfg.agent.hyper.layers));
        }
        agent = local.get();
    }

    std::ofstream trainingLog, episodesLog;
    if (!topts.outDir.empty())
    {
        fs::create_directories(topts.outDir);
        trainingLog = OpenOut(topts.outDir / "training_log.csv");
        trainingLog << "update_idx,loss,epsilon,meanQ\n";
        episodesLog = OpenOut(topts.outDir / "episodes.csv");
        episodesLog << "episode,envSeed,meanQoe,meanDelayMs,meanReward,qosViolationFraction,"
                       "epsilonAtEnd\n";
    }

    EpisodeOptions opts;
    opts.agent = agent;
    opts.learn = true;
    opts.explore = true;
    double lastEpsilon = 0.0;
    opts.onTraining = [&](const LossReport& r) {
        lastEpsilon = r.epsilon;
        if (trainingLog.is_open())
        {
            trainingLog << r.updateIndex << ',' << FormatDouble(r.loss) << ','
                        << FormatDouble(r.epsilon) << ',' << FormatDouble(r.meanQ) << '\n';
        }
    };
    for (std::size_t k = 0; k < topts.episodes; ++k)
    {
        opts.envSeed = MixSeed(cfg.seed, k + 1);
        const auto result = RunEpisode(trainCfg, opts);
        const auto summary = Summarize(trainCfg, result);
        if (local)
        {
            lastEpsilon = local->Epsilon();
        }
        if (episodesLog.is_open())
        {
            episodesLog << k << ',' << opts.envSeed << ',' << FormatDouble(summary.meanQoe) << ','
                        << FormatDouble(summary.delay.meanMs) << ','
                        << FormatDouble(summary.meanReward) << ','
                        << FormatDouble(summary.qosViolationFraction) << ','
                        << FormatDouble(lastEpsilon) << '\n';
        }
        if (topts.progress)
        {
            topts.progress(k, summary);
        }
    }

    RunConfig evalCfg = cfg;
    evalCfg.agent.mode = AgentMode::Evaluate;
    EpisodeOptions evalOpts;
    evalOpts.envSeed = cfg.seed;
    evalOpts.agent = agent;
    if (remote)
    {
        auto a = RunOne(evalCfg, topts.outDir, evalOpts, std::nullopt);
        if (!topts.outDir.empty())
        {
            remote->Save(fs::absolute(topts.outDir / "model.txt").string());
        }
        remote->Shutdown();
        return a;
    }
    return RunOne(evalCfg, topts.outDir, evalOpts, local->Online());
}

RunArtifacts
Evaluate(const RunConfig& cfg, const QNetwork& net, const fs::path& outDir)
{
    RunConfig evalCfg = cfg;
    evalCfg.policy = Policy{};
    evalCfg.agent.mode = AgentMode::Evaluate;
    evalCfg.Validate();
    DqnAgent agent(evalCfg.agent.hyper, evalCfg.seed);
    agent.LoadNetwork(net);
    EpisodeOptions opts;
    opts.envSeed = evalCfg.seed;
    opts.agent = &agent;
    return RunOne(evalCfg, outDir, opts, agent.Online());
}

} // namespace ranai
