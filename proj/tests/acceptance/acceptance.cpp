// Acceptance run: prints PASS/FAIL per criterion and exits non-zero on any
// failure. Criterion 9 concerns the external Python agent and is skipped.
#include "ranai/agent/reward.hpp"
#include "ranai/app/burst.hpp"
#include "ranai/io/experiment.hpp"
#include "ranai/io/scenario.hpp"

#include "oracles.hpp"
#include "scripted_agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

using namespace ranai;

namespace {

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void Require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail << "  failed: " << what << "\n";
        }
    }
};

RunConfig
ConstantConfig(const std::string& mode, std::size_t ues, std::uint64_t seed)
{
    RunConfig cfg;
    cfg.seed = seed;
    cfg.policy = Policy::Parse("constant:" + mode);
    cfg.agent.mode = AgentMode::Off;
    cfg.scenario.numUes = ues;
    return cfg;
}

const std::vector<std::string> kModes{"C-R", "C-SC", "C-SA"};

Outcome
ConstantQoe()
{
    Outcome o;
    const std::map<std::string, double> expected{{"C-R", 1.0}, {"C-SC", 0.88}, {"C-SA", 0.22}};
    for (const auto& mode : kModes)
    {
        for (auto mech : {NotificationMechanism::Ideal, NotificationMechanism::Real})
        {
            for (std::size_t ues : {1u, 5u})
            {
                auto cfg = ConstantConfig(mode, ues, 1);
                cfg.controller.mechanism = mech;
                const double q = Run(cfg, {}).summary.meanQoe;
                o.detail << "  " << mode << " " << ToString(mech) << " N_u=" << ues << " QoE " << q << "\n";
                o.Require(std::abs(q - expected.at(mode)) < 1e-12, mode + " QoE");
            }
        }
    }
    return o;
}

Outcome
RewardSuite()
{
    Outcome o;
    RewardConfig cfg;
    o.Require(std::abs(ComputeReward(cfg, 0.030, 1.0, 5.4) - 0.88) < 1e-12, "C-SC example 0.88");
    o.Require(ComputeReward(cfg, 0.060, 1.0, 0.0) == 0.0, "delay 60 ms gives 0");
    RewardConfig qos = cfg;
    qos.alpha = 0.0;
    o.Require(std::abs(ComputeReward(qos, 0.025, 1.0, 0.0) - 0.5) < 1e-12, "alpha 0 example 0.5");
    o.Require(std::abs(ComputeReward(cfg, 0.010, 1.0, 0.0) - 1.0) < 1e-12, "C-R example 1.0");

    RngStream rng(1, "acceptance/reward");
    std::size_t gated = 0;
    for (int i = 0; i < 100000; ++i)
    {
        RewardConfig c;
        c.alpha = rng.Uniform();
        const double delay = rng.Uniform(0.0, 0.2);
        const double prr = rng.Bernoulli(0.5) ? 1.0 : rng.Uniform();
        const double cd = rng.Uniform(0.0, 45.0);
        const double r = ComputeReward(c, delay, prr, cd);
        if (delay >= 0.050 || prr < 1.0)
        {
            ++gated;
            if (r != 0.0)
            {
                o.Require(false, "gate leaked a non-zero reward");
                break;
            }
        }
    }
    o.Require(ComputeReward(cfg, 0.050, 1.0, 0.0) == 0.0, "delay exactly 50 ms gates");
    o.detail << "  " << gated << " gated samples all zero\n";
    return o;
}

Outcome
GradientOracle()
{
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        worst = std::max(worst, oracle::CheckGradient(seed).relativeError);
    }
    o.detail << "  worst relative error over 20 fixtures " << worst << "\n";
    o.Require(worst < 1e-4, "finite-difference agreement");
    const auto dq = oracle::HandDoubleQ();
    o.detail << "  double-Q target " << dq.computed << " (hand value " << dq.expected << ")\n";
    o.Require(std::abs(dq.computed - dq.expected) < 1e-12, "double-Q hand value");
    return o;
}

Outcome
PolicyLearning()
{
    Outcome o;
    int matches = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto r = oracle::LearnToyMdp(seed);
        matches += r.Matches() ? 1 : 0;
        o.Require(r.updates <= 2000, "update budget");
    }
    const auto opt = oracle::ToyMdp{}.OptimalPolicy();
    o.detail << "  optimum (" << opt[0] << "," << opt[1] << "), matched in " << matches << "/10 seeds\n";
    o.Require(matches >= 9, "at least 9/10 seeds");
    return o;
}

Outcome
CongestionOrdering()
{
    Outcome o;
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
    {
        std::map<std::pair<std::string, std::size_t>, double> p50;
        for (const auto& mode : kModes)
        {
            for (std::size_t ues : {1u, 5u})
            {
                p50[{mode, ues}] = Run(ConstantConfig(mode, ues, seed), {}).summary.delay.p50Ms;
            }
            o.detail << "  seed " << seed << " " << mode << " median delay N_u=1 " << p50[{mode, 1}]
                     << " ms, N_u=5 " << p50[{mode, 5}] << " ms\n";
            o.Require(p50[{mode, 5}] > p50[{mode, 1}], mode + " N_u=5 above N_u=1");
        }
        for (std::size_t ues : {1u, 5u})
        {
            o.Require(p50[{"C-R", ues}] > p50[{"C-SC", ues}], "C-R above C-SC");
            o.Require(p50[{"C-SC", ues}] > p50[{"C-SA", ues}], "C-SC above C-SA");
            o.Require(p50[{"C-R", ues}] > 1.5 * p50[{"C-SA", ues}], "C-R/C-SA ratio above 1.5");
        }
    }
    return o;
}

Outcome
DqlTradeoff()
{
    Outcome o;
    const auto cr = Run(ConstantConfig("C-R", 1, 1), {}).summary;
    o.detail << "  constant C-R violates the delay bound in " << cr.delayViolationFraction * 100.0
             << "% of windows\n";
    o.Require(cr.delayViolationFraction >= 0.20, "C-R stresses the cell");

    int good = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        RunConfig cfg;
        cfg.seed = seed;
        cfg.scenario.numUes = 1;
        TrainOptions opts;
        opts.episodes = 50;
        const auto s = TrainThenEval(cfg, opts).summary;
        const bool ok = s.delay.meanMs < 50.0 && s.meanQoe > 0.22;
        good += ok ? 1 : 0;
        o.detail << "  seed " << seed << ": mean delay " << s.delay.meanMs << " ms, QoE " << s.meanQoe
                 << (ok ? "" : "  (misses)") << "\n";
    }
    o.detail << "  " << good << "/10 seeds meet both bounds\n";
    o.Require(good >= 8, "at least 8/10 seeds");
    return o;
}

Outcome
NotificationEffect()
{
    Outcome o;
    RunConfig cfg;
    cfg.scenario.numUes = 3;
    cfg.scenario.durationSeconds = 20.0;
    cfg.ran.notificationLossProb = 0.3;

    // Wanted mode changes every second, so most periods are no-ops unless a
    // notification was lost.
    auto chooser = [](UeIndex ue, std::uint64_t q) { return static_cast<ActionIndex>((q / 10 + ue) % 3); };

    std::map<NotificationMechanism, double> medianDelay;
    for (auto mech : {NotificationMechanism::Ideal, NotificationMechanism::Real})
    {
        cfg.controller.mechanism = mech;
        oracle::ScriptedAgent agent(chooser);
        EpisodeOptions opts;
        opts.envSeed = 7;
        opts.agent = &agent;
        const auto r = RunEpisode(cfg, opts);
        medianDelay[mech] = Summarize(cfg, r).delay.p50Ms;

        std::map<UeIndex, std::vector<SimTime>> applied;
        std::map<UeIndex, std::vector<const NotificationRecord*>> perUe;
        std::size_t delivered = 0, lost = 0, redispatched = 0;
        double lagSum = 0.0;
        for (const auto& n : r.notifications)
        {
            perUe[n.ue].push_back(&n);
            if (mech == NotificationMechanism::Ideal)
            {
                o.Require(n.outcome == NotificationOutcome::Applied && n.Lag() == SimTime(),
                          "ideal notification applied with zero lag");
                applied[n.ue].push_back(n.issuedAt);
                continue;
            }
            if (n.outcome == NotificationOutcome::Delivered)
            {
                ++delivered;
                const auto lag = *n.Lag();
                lagSum += lag.GetSeconds() * 1e3;
                o.Require(lag > SimTime(), "real lag strictly positive");
                o.Require(lag == *n.deliveredAt - n.issuedAt, "lag equals downlink delivery delay");
                applied[n.ue].push_back(*n.deliveredAt);
            }
        }
        for (UeIndex ue = 0; ue < cfg.scenario.numUes; ++ue)
        {
            std::vector<SimTime> changes;
            for (const auto& c : r.ues[ue].modeChanges)
            {
                changes.push_back(c.at);
            }
            // Every mode change happens exactly when a notification lands.
            o.Require(changes == applied[ue], "mode changes coincide with notification application");
            const auto& recs = perUe[ue];
            for (std::size_t i = 0; i < recs.size(); ++i)
            {
                const auto out = recs[i]->outcome;
                if (out == NotificationOutcome::Corrupted || out == NotificationOutcome::Expired ||
                    out == NotificationOutcome::Overflow)
                {
                    ++lost;
                    const SimTime next = recs[i]->issuedAt + cfg.controller.period;
                    if (next < cfg.Duration())
                    {
                        const bool again = i + 1 < recs.size() && recs[i + 1]->issuedAt == next;
                        redispatched += again ? 1 : 0;
                        o.Require(again, "lost notification re-sent at the next period");
                    }
                }
            }
        }
        if (mech == NotificationMechanism::Real)
        {
            o.detail << "  real: " << delivered << " delivered (mean lag "
                     << (delivered ? lagSum / static_cast<double>(delivered) : 0.0) << " ms), " << lost
                     << " lost, " << redispatched << " re-sent at the next period\n";
            o.Require(delivered > 0 && lost > 0, "lossy config exercises both outcomes");
        }
        else
        {
            o.detail << "  ideal: " << r.notifications.size() << " notifications, all applied with zero lag\n";
        }
    }
    o.detail << "  median burst delay ideal " << medianDelay[NotificationMechanism::Ideal] << " ms, real "
             << medianDelay[NotificationMechanism::Real] << " ms\n";
    return o;
}

std::string
Serialize(const RunConfig& cfg, std::uint64_t envSeed, AgentInterface* agent, EpisodeResult& result)
{
    std::ostringstream stats, ctrl, cell, bursts;
    EpisodeOptions opts;
    opts.envSeed = envSeed;
    opts.agent = agent;
    opts.learn = agent != nullptr;
    opts.explore = agent != nullptr;
    opts.streams = {&stats, &ctrl, &cell, &bursts, nullptr};
    result = RunEpisode(cfg, opts);
    return stats.str() + ctrl.str() + cell.str() + bursts.str();
}

Outcome
Invariants()
{
    Outcome o;
    RngStream rng(2024, "acceptance/invariants");
    std::size_t checkedWindows = 0;
    for (int trial = 0; trial < 20; ++trial)
    {
        RunConfig cfg;
        cfg.seed = rng.NextU64() % 100000;
        cfg.scenario.numUes = 1 + rng.UniformInt(5);
        cfg.scenario.durationSeconds = 0.1 * static_cast<double>(30 + rng.UniformInt(71));
        cfg.app.frameJitter = rng.Uniform(0.0, 0.3);
        cfg.app.cbrEnabled = rng.Bernoulli(0.7);
        cfg.ran.uplinkBufferBytes = 500'000 + rng.UniformInt(4'000'000);
        cfg.ran.downlinkBufferBytes = 20'000 + rng.UniformInt(1'000'000);
        cfg.ran.notificationLossProb = rng.Uniform(0.0, 0.5);
        cfg.controller.mechanism = rng.Bernoulli(0.5) ? NotificationMechanism::Real : NotificationMechanism::Ideal;
        const bool dql = rng.Bernoulli(0.5);
        if (!dql)
        {
            cfg.policy = Policy::Parse("constant:" + kModes[rng.UniformInt(3)]);
            cfg.agent.mode = AgentMode::Off;
        }
        const std::string label = "trial " + std::to_string(trial);

        EpisodeResult a, b;
        std::string textA, textB;
        if (dql)
        {
            DqnAgent agentA(cfg.agent.hyper, cfg.seed), agentB(cfg.agent.hyper, cfg.seed);
            textA = Serialize(cfg, cfg.seed, &agentA, a);
            textB = Serialize(cfg, cfg.seed, &agentB, b);
        }
        else
        {
            textA = Serialize(cfg, cfg.seed, nullptr, a);
            textB = Serialize(cfg, cfg.seed, nullptr, b);
        }
        o.Require(textA == textB, label + ": byte-identical outputs");

        std::map<UeIndex, std::pair<std::uint64_t, std::uint64_t>> cumulative;
        for (const auto& w : a.windows)
        {
            ++checkedWindows;
            if (!(w.window.prr >= 0.0 && w.window.prr <= 1.0))
            {
                o.Require(false, label + ": PRR in [0,1]");
            }
            auto& c = cumulative[w.window.ue];
            c.first += w.window.burstsSent;
            c.second += w.window.burstsReceived;
            if (c.second > c.first)
            {
                o.Require(false, label + ": bursts received <= bursts sent");
            }
        }
        std::map<UeIndex, std::uint64_t> completedBytes;
        for (const auto& bst : a.bursts)
        {
            completedBytes[bst.ue] += bst.totalBytes;
        }
        for (UeIndex ue = 0; ue < a.ues.size(); ++ue)
        {
            const auto& u = a.ues[ue];
            for (const auto* acct : {&u.uplink, &u.downlink})
            {
                o.Require(acct->offered == acct->delivered + acct->dropped + acct->buffered,
                          label + ": byte conservation");
            }
            o.Require(u.burstsCompleted + u.incompleteBursts <= u.burstsGenerated,
                      label + ": completed + incomplete <= generated");
            o.Require(completedBytes[ue] <= u.uplink.delivered, label + ": completed bytes were delivered");
        }
    }

    // Reassembly completes exactly when every fragment has arrived.
    std::size_t bursts = 0;
    for (int trial = 0; trial < 2000; ++trial)
    {
        Burst b;
        b.burstId = static_cast<std::uint64_t>(trial);
        b.totalBytes = 1 + rng.UniformInt(20'000);
        b.fragmentCount = FragmentCount(b.totalBytes, 1460);
        std::uint64_t id = 0;
        auto frags = MakeFragments(b, 1460, id);
        std::vector<Packet> arrivals;
        std::vector<bool> present(frags.size(), false);
        for (const auto& f : frags)
        {
            if (!rng.Bernoulli(0.1))
            {
                arrivals.push_back(f);
                present[f.fragment.fragmentIndex] = true;
                if (rng.Bernoulli(0.1))
                {
                    arrivals.push_back(f);
                }
            }
        }
        for (std::size_t i = arrivals.size(); i > 1; --i)
        {
            std::swap(arrivals[i - 1], arrivals[rng.UniformInt(i)]);
        }
        const bool complete = std::all_of(present.begin(), present.end(), [](bool x) { return x; });
        BurstSink sink;
        std::size_t completions = 0;
        std::vector<bool> seen(frags.size(), false);
        for (const auto& p : arrivals)
        {
            seen[p.fragment.fragmentIndex] = true;
            if (sink.OnFragmentDelivered(p, SimTime()))
            {
                ++completions;
                o.Require(std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }),
                          "burst completed before its last fragment");
            }
        }
        o.Require(completions == (complete ? 1u : 0u), "burst completes once iff all fragments arrive");
        ++bursts;
    }
    o.detail << "  20 randomized episodes run twice (" << checkedWindows << " windows), " << bursts
             << " randomized reassemblies\n";
    return o;
}

} // namespace

int
main()
{
    struct Criterion
    {
        int id;
        std::string name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "constant-policy QoE constants", ConstantQoe},
        {2, "reward examples and QoS gate", RewardSuite},
        {3, "gradient and double-Q oracles", GradientOracle},
        {4, "policy learning on a two-state MDP", PolicyLearning},
        {5, "congestion and mode delay ordering", CongestionOrdering},
        {6, "DQL trade-off after 50 training episodes", DqlTradeoff},
        {7, "notification mechanism effect", NotificationEffect},
        {8, "conservation and invariant properties", Invariants},
    };
    bool allPass = true;
    for (const auto& c : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception& e)
        {
            o.pass = false;
            o.detail << "  exception: " << e.what() << "\n";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        allPass = allPass && o.pass;
        std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
                  << secs << " s)\n"
                  << o.detail.str() << std::flush;
    }
    std::cout << "criterion 9 [external Python agent over the bridge]: SKIPPED (secondary component not built)\n";
    std::cout << (allPass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
    return allPass ? 0 : 1;
}
