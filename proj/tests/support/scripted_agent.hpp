#pragma once

#include "ranai/agent/agent_interface.hpp"

#include <functional>

namespace ranai::oracle {

// Returns a chosen action per UE and records what the controller hands over.
class ScriptedAgent : public AgentInterface
{
  public:
    using Chooser = std::function<ActionIndex(UeIndex, std::uint64_t query)>;

    explicit ScriptedAgent(Chooser choose)
        : m_choose(std::move(choose))
    {
    }

    std::vector<ActionIndex> GetAction(std::span<const StateVector> batch, bool) override
    {
        std::vector<ActionIndex> out;
        for (std::size_t i = 0; i < batch.size(); ++i)
        {
            states.emplace_back(batch[i]);
            out.push_back(m_choose(static_cast<UeIndex>(i), queries));
        }
        ++queries;
        return out;
    }

    LossReport Update(std::span<const Transition> ts) override
    {
        ++updates;
        transitions.insert(transitions.end(), ts.begin(), ts.end());
        return {};
    }

    std::uint64_t queries = 0;
    std::uint64_t updates = 0;
    std::vector<StateVector> states;
    std::vector<Transition> transitions;

  private:
    Chooser m_choose;
};

} // namespace ranai::oracle
