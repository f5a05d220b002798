#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/agent/q_network.hpp"
#include "ranai/agent/replay_buffer.hpp"

#include <functional>

namespace ranai {

struct AgentHyperparams
{
    std::vector<std::size_t> layers{8, 12, 6, 3};
    double discount = 0.95;
    double learningRate = 1e-4;
    double weightDecay = 1e-3;
    std::size_t batchSize = 32;
    std::size_t replayCapacity = 10'000;
    std::size_t targetSyncPeriod = 100; // in updates
    double epsilonStart = 1.0;
    double epsilonEnd = 0.05;
    std::size_t epsilonDecaySteps = 20'000; // in exploring GetAction calls (25 episodes of 800)

    void Validate() const;
};

/// Centralized Double-DQN agent: one network shared by all users.
class DqnAgent : public AgentInterface
{
  public:
    using LogCallback = std::function<void(const LossReport&)>;

    /// Streams "agent/init", "agent/explore" and "agent/replay" derive from
    /// `seed`.
    DqnAgent(AgentHyperparams params, std::uint64_t seed);

    /// Epsilon-greedy per user when explore is set (one schedule step per
    /// call), greedy otherwise. Greedy ties go to the lowest index.
    std::vector<ActionIndex> GetAction(std::span<const StateVector> states, bool explore) override;

    /// Stores the transitions, then takes one SGD step on a uniformly
    /// sampled batch once the replay holds at least a batch.
    LossReport Update(std::span<const Transition> transitions) override;

    double Epsilon() const;
    std::uint64_t ExploreSteps() const { return m_exploreSteps; }
    std::uint64_t UpdateCount() const { return m_updates; }

    const QNetwork& Online() const { return m_online; }
    const QNetwork& Target() const { return m_target; }
    /// Replaces both networks (e.g. after loading a model).
    void LoadNetwork(const QNetwork& net);
    const AgentHyperparams& Params() const { return m_params; }
    const ReplayBuffer& Replay() const { return m_replay; }

    void SetLogCallback(LogCallback cb) { m_log = std::move(cb); }

  private:
    AgentHyperparams m_params;
    QNetwork m_online;
    QNetwork m_target;
    QNetwork m_grad;
    ReplayBuffer m_replay;
    RngStream m_exploreRng;
    RngStream m_replayRng;
    std::uint64_t m_exploreSteps = 0;
    std::uint64_t m_updates = 0;
    LogCallback m_log;
};

} // namespace ranai
