#pragma once

// Reference computations shared by the unit tests and the acceptance binary.

#include "ranai/agent/dqn_agent.hpp"
#include "ranai/agent/q_network.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ranai::oracle {

struct GradientCheck
{
    double relativeError = 0.0;
    std::size_t parameters = 0;
};

// Analytic gradient vs central differences for a random network and batch.
inline GradientCheck
CheckGradient(std::uint64_t seed)
{
    RngStream rng(seed, "oracle/gradient");
    const std::size_t in = 2 + rng.UniformInt(7);
    const std::size_t hidden1 = 2 + rng.UniformInt(10);
    const std::size_t hidden2 = 2 + rng.UniformInt(8);
    const std::size_t out = 2 + rng.UniformInt(3);
    auto net = QNetwork::Random({in, hidden1, hidden2, out}, rng);

    const std::size_t batchSize = 1 + rng.UniformInt(8);
    std::vector<std::vector<double>> states(batchSize);
    std::vector<QSample> batch;
    for (auto& s : states)
    {
        for (std::size_t i = 0; i < in; ++i)
        {
            s.push_back(rng.Uniform(-2.0, 2.0));
        }
    }
    for (const auto& s : states)
    {
        batch.push_back({s, static_cast<std::size_t>(rng.UniformInt(out)), rng.Uniform(-3.0, 3.0)});
    }

    QNetwork analytic;
    SquaredErrorLoss(net, batch, analytic);

    std::vector<double> a;
    std::vector<double> n;
    QNetwork scratch;
    const double h = 1e-6;
    auto probe = [&](double& p, double g) {
        const double keep = p;
        p = keep + h;
        const double up = SquaredErrorLoss(net, batch, scratch);
        p = keep - h;
        const double down = SquaredErrorLoss(net, batch, scratch);
        p = keep;
        a.push_back(g);
        n.push_back((up - down) / (2.0 * h));
    };
    net.ZipParameters(analytic, probe);

    double diff = 0.0;
    double na = 0.0;
    double nn = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        diff += (a[i] - n[i]) * (a[i] - n[i]);
        na += a[i] * a[i];
        nn += n[i] * n[i];
    }
    const double denom = std::sqrt(na) + std::sqrt(nn);
    return {denom > 0.0 ? std::sqrt(diff) / denom : 0.0, a.size()};
}

// Online net picks the action, target net scores it.
struct DoubleQCase
{
    double computed = 0.0;
    double expected = 0.0;
};

inline DoubleQCase
HandDoubleQ()
{
    // One input, two outputs: Q_a(s) = w_a * s + b_a.
    QNetwork online({1, 2});
    online.Layers()[0].weights = {1.0, 2.0};
    online.Layers()[0].bias = {0.5, 0.0};
    QNetwork target({1, 2});
    target.Layers()[0].weights = {-1.0, 0.5};
    target.Layers()[0].bias = {3.0, 0.25};
    const std::vector<double> next{2.0};
    // online: Q = (2.5, 4.0) -> action 1; target Q_1 = 0.5*2 + 0.25 = 1.25.
    // y = 0.4 + 0.9 * 1.25 = 1.525
    return {DoubleQTarget(online, target, next, 0.4, 0.9), 1.525};
}

// Two states, two actions (0 = stay, 1 = switch), deterministic moves.
struct ToyMdp
{
    double discount = 0.5;
    std::array<std::array<double, 2>, 2> reward{{{0.2, 0.0}, {1.0, 0.0}}};

    int Next(int s, int a) const { return a == 0 ? s : 1 - s; }

    // Best of the four deterministic policies by exact policy evaluation.
    std::array<int, 2> OptimalPolicy() const
    {
        std::array<int, 2> best{0, 0};
        double bestValue = -1e300;
        for (int p = 0; p < 4; ++p)
        {
            const std::array<int, 2> pi{p & 1, (p >> 1) & 1};
            std::array<double, 2> v{0.0, 0.0};
            for (int it = 0; it < 2000; ++it)
            {
                std::array<double, 2> nv{};
                for (int s = 0; s < 2; ++s)
                {
                    nv[s] = reward[s][pi[s]] + discount * v[Next(s, pi[s])];
                }
                v = nv;
            }
            if (v[0] + v[1] > bestValue + 1e-12)
            {
                bestValue = v[0] + v[1];
                best = pi;
            }
        }
        return best;
    }

    static std::vector<double> Encode(int s) { return s == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0}; }
};

struct ToyLearningResult
{
    std::array<int, 2> learned{};
    std::array<int, 2> optimal{};
    std::uint64_t updates = 0;
    bool Matches() const { return learned == optimal; }
};

inline ToyLearningResult
LearnToyMdp(std::uint64_t seed, std::uint64_t maxUpdates = 2000)
{
    ToyMdp mdp;
    AgentHyperparams hp;
    hp.layers = {2, 16, 2};
    hp.discount = mdp.discount;
    hp.learningRate = 0.02;
    hp.weightDecay = 0.0;
    hp.batchSize = 16;
    hp.replayCapacity = 2000;
    hp.targetSyncPeriod = 20;
    hp.epsilonStart = 1.0;
    hp.epsilonEnd = 0.1;
    hp.epsilonDecaySteps = 500;
    DqnAgent agent(hp, seed);

    int s = 0;
    while (agent.UpdateCount() < maxUpdates)
    {
        const std::vector<StateVector> states{ToyMdp::Encode(s)};
        const int a = static_cast<int>(agent.GetAction(states, true).at(0));
        const int next = mdp.Next(s, a);
        const Transition t{0, states[0], static_cast<ActionIndex>(a), ToyMdp::Encode(next), mdp.reward[s][a]};
        agent.Update(std::span<const Transition>(&t, 1));
        s = next;
    }

    ToyLearningResult r;
    r.optimal = mdp.OptimalPolicy();
    const std::vector<StateVector> both{ToyMdp::Encode(0), ToyMdp::Encode(1)};
    const auto greedy = agent.GetAction(both, false);
    r.learned = {static_cast<int>(greedy[0]), static_cast<int>(greedy[1])};
    r.updates = agent.UpdateCount();
    return r;
}

} // namespace ranai::oracle
