#include "ranai/io/scenario.hpp"

#include "ranai/util/csv.hpp"

#include <fstream>
#include <ostream>

namespace ranai {

namespace {

constexpr NodeId kGnb = 0;

NodeId
NodeOf(UeIndex ue)
{
    return static_cast<NodeId>(ue) + 1;
}

} // namespace

ChannelTrace
BuildChannelTrace(const RunConfig& cfg, std::uint64_t envSeed)
{
    const auto& sc = cfg.scenario;
    if (sc.channel == ChannelSource::Trace)
    {
        std::ifstream in(sc.tracePath);
        if (!in)
        {
            throw TraceError("cannot open channel trace " + sc.tracePath);
        }
        auto trace = ParseTrace(in, TraceFormat{});
        for (UeIndex ue = 0; ue < sc.numUes; ++ue)
        {
            if (!trace.HasLink(NodeOf(ue), kGnb))
            {
                throw TraceError("channel trace has no link from node " +
                                 std::to_string(NodeOf(ue)) + " to the gNB (node 0)");
            }
        }
        return trace;
    }
    auto synth = sc.synth;
    synth.gnbId = kGnb;
    synth.duration = sc.durationSeconds;
    const auto mobility = MakeLoopMobility(sc.route, NodeOf(0), sc.numUes, sc.durationSeconds,
                                           RngStream(envSeed, "mobility"));
    return SynthesizeTrace(mobility, synth, RngStream(envSeed, "channel"));
}

std::shared_ptr<const FrameSizer>
BuildFrameSizer(const RunConfig& cfg)
{
    if (!cfg.app.frameTracePath.empty())
    {
        std::ifstream in(cfg.app.frameTracePath);
        if (!in)
        {
            throw FrameTraceError("cannot open frame trace " + cfg.app.frameTracePath);
        }
        return std::make_shared<FrameSizer>(cfg.app.modes, FrameTrace::Parse(in, cfg.app.modes),
                                            cfg.app.traceLoop);
    }
    return std::make_shared<FrameSizer>(cfg.app.modes, cfg.app.frameJitter);
}

ModeIndex
InitialMode(const RunConfig& cfg)
{
    if (cfg.policy.kind == Policy::Kind::Constant)
    {
        return cfg.app.modes.IndexOf(cfg.policy.mode);
    }
    return cfg.app.modes.IndexOf(cfg.app.initialMode);
}

void
WriteStatsHeader(std::ostream& out)
{
    out << "t,ue,mode,burstsSent,burstsReceived,bytesReceived,meanDelayMs,prr\n";
}

void
WriteBurstsHeader(std::ostream& out)
{
    out << "ue,burstId,mode,sizeBytes,generatedAt,completedAt,delayMs\n";
}

EpisodeResult
RunEpisode(const RunConfig& cfg, const EpisodeOptions& opts)
{
    cfg.Validate();
    const std::size_t n = cfg.scenario.numUes;
    const SimTime stop = cfg.Duration();
    const auto trace = BuildChannelTrace(cfg, opts.envSeed);
    const auto sizer = BuildFrameSizer(cfg);
    const ModeIndex initial = InitialMode(cfg);
    const auto& modes = cfg.app.modes;

    Simulator sim;
    RanCell cell(cfg.ran, n, RngStream(opts.envSeed, "notification-loss"));
    cell.SetLossProvider([&trace](UeIndex ue, Direction, SimTime t) {
        // The downlink reuses the uplink value (reciprocal channel).
        return trace.LossAt(NodeOf(ue), kGnb, t);
    });
    if (opts.streams.tti)
    {
        cell.SetTtiLog(opts.streams.tti);
    }

    RngStream appRng(opts.envSeed, "app");
    std::vector<std::unique_ptr<SensorApp>> apps;
    std::vector<std::unique_ptr<AppStatsCalculator>> stats;
    std::vector<BurstSink> sinks(n);
    std::vector<std::unique_ptr<CbrSource>> cbr;
    EpisodeResult result;
    result.ues.resize(n);

    for (UeIndex ue = 0; ue < n; ++ue)
    {
        stats.push_back(std::make_unique<AppStatsCalculator>(ue, SimTime()));
        apps.push_back(std::make_unique<SensorApp>(
            ue, cfg.app.sensor, sizer, appRng.Derive("ue" + std::to_string(ue)), initial,
            [&cell](const Packet& p) { return cell.EnqueueUplink(p); }));
        auto* st = stats.back().get();
        auto* outcome = &result.ues[ue];
        apps.back()->SetBurstCallback([st, outcome](const Burst& b) {
            st->OnBurstSent(b);
            ++outcome->burstsGenerated;
        });
        if (cfg.app.cbrEnabled)
        {
            cbr.push_back(std::make_unique<CbrSource>(
                ue, cfg.app.cbrPacketBytes, cfg.app.cbrInterval,
                [&cell, &sim](const Packet& p) { cell.SendDownlink(p, sim.Now()); }));
        }
    }

    std::vector<UeHandles> handles;
    for (UeIndex ue = 0; ue < n; ++ue)
    {
        handles.push_back({apps[ue].get(), stats[ue].get()});
    }
    ControllerConfig ctrlCfg = cfg.controller;
    ctrlCfg.learn = opts.learn;
    ctrlCfg.explore = opts.explore;
    RanAiController controller(ctrlCfg, cfg.reward, modes, cell, handles, opts.agent);
    controller.SetWindowCallback([&](const AppStatsWindow& w, double r) {
        result.windows.push_back({w, r});
        if (auto* out = opts.streams.stats)
        {
            *out << FormatDouble(w.windowEnd.GetSeconds()) << ',' << w.ue << ','
                 << modes.At(w.mode).name << ',' << w.burstsSent << ',' << w.burstsReceived << ','
                 << w.bytesReceived << ',';
            if (w.delayDefined)
            {
                *out << FormatDouble(w.meanBurstDelay * 1e3);
            }
            *out << ',' << FormatDouble(w.prr) << '\n';
        }
    });
    if (opts.onTraining)
    {
        controller.SetTrainingCallback(opts.onTraining);
    }
    controller.SetControllerLog(opts.streams.controller);
    controller.SetCellLog(opts.streams.cell);

    cell.SetUplinkReceiveCallback([&](const Packet& p, SimTime at) {
        if (p.kind != PacketKind::AppFragment)
        {
            return;
        }
        stats[p.ue]->OnFragmentReceived(p.sizeBytes);
        if (auto done = sinks[p.ue].OnFragmentDelivered(p, at))
        {
            stats[p.ue]->OnBurstReceived(*done);
            ++result.ues[p.ue].burstsCompleted;
            result.bursts.push_back(*done);
            if (auto* out = opts.streams.bursts)
            {
                *out << done->ue << ',' << done->burstId << ',' << modes.At(done->mode).name << ','
                     << done->totalBytes << ',' << FormatDouble(done->generatedAt.GetSeconds())
                     << ',' << FormatDouble(done->completedAt.GetSeconds()) << ','
                     << FormatDouble(done->Delay().GetMillis()) << '\n';
            }
        }
    });
    cell.SetDownlinkReceiveCallback([&](const Packet& p, SimTime at) {
        if (p.kind == PacketKind::RanAiNotification)
        {
            controller.OnNotificationDelivered(p, at);
        }
    });
    cell.SetDownlinkLossCallback([&](const Packet& p, SimTime at, LossReason why) {
        if (p.kind == PacketKind::RanAiNotification)
        {
            controller.OnNotificationLost(p, at, why);
        }
    });

    // Install order fixes same-instant ordering: controller, apps, CBR, RAN.
    controller.Install(sim, stop);
    if (cfg.app.enabled)
    {
        for (auto& a : apps)
        {
            a->Install(sim, stop);
        }
    }
    for (auto& c : cbr)
    {
        c->Install(sim, stop);
    }
    cell.Install(sim, stop);

    result.sim = sim.RunUntil(stop);
    controller.Finish(stop);

    result.notifications = controller.Notifications();
    result.controllerUpdates = controller.Updates();
    result.actionQueries = controller.ActionQueries();
    for (UeIndex ue = 0; ue < n; ++ue)
    {
        auto& o = result.ues[ue];
        const auto& ul = cell.Uplink(ue);
        const auto& dl = cell.Downlink(ue);
        o.uplink = {ul.OfferedBytes(), ul.DeliveredBytes(), ul.DroppedBytes(), ul.BufferBytes()};
        o.downlink = {dl.OfferedBytes(), dl.DeliveredBytes(), dl.DroppedBytes(), dl.BufferBytes()};
        o.incompleteBursts = sinks[ue].IncompleteBursts();
        o.duplicateFragments = sinks[ue].Duplicates();
        o.transitions = controller.Transitions(ue);
        o.modeChanges = apps[ue]->ModeChanges();
    }
    return result;
}

} // namespace ranai
