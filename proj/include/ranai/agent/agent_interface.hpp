#pragma once

#include "ranai/ran/packet.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ranai {

using StateVector = std::vector<double>;
using ActionIndex = std::uint32_t;

/// One learning record [s_t, a_t, s_{t+1}, r_t] of a single user.
struct Transition
{
    UeIndex ue = 0;
    StateVector state;
    ActionIndex action = 0;
    StateVector nextState;
    double reward = 0.0;
};

struct LossReport
{
    bool trained = false; // false while the replay holds fewer than a batch
    std::uint64_t updateIndex = 0;
    double loss = 0.0;
    double epsilon = 0.0;
    double meanQ = 0.0;
};

/// The centralized agent contract: one batch of N_u states in, N_u actions
/// out; one batch of N_u transitions per learning step.
class AgentInterface
{
  public:
    virtual ~AgentInterface() = default;

    virtual std::vector<ActionIndex> GetAction(std::span<const StateVector> states, bool explore) = 0;
    virtual LossReport Update(std::span<const Transition> transitions) = 0;
};

} // namespace ranai
