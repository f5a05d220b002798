#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/bridge/line_channel.hpp"
#include "ranai/bridge/protocol.hpp"

#include <functional>
#include <memory>

namespace ranai::bridge {

struct RemoteAgentConfig
{
    std::string runId = "run";
    std::size_t numUsers = 1;
    std::size_t stateDim = 8;
    std::size_t numActions = 3;
    std::chrono::milliseconds timeout{30'000};
};

/// Controller-side adapter: forwards get_action/update to an external agent
/// and blocks until the matching reply arrives.
class RemoteAgent : public AgentInterface
{
  public:
    /// Performs the hello exchange on an already connected channel.
    RemoteAgent(std::unique_ptr<LineChannel> channel, RemoteAgentConfig cfg);

    /// Starts `command` through /bin/sh with its stdin and stdout attached
    /// to a socket pair.
    static std::unique_ptr<RemoteAgent> Spawn(const std::string& command, RemoteAgentConfig cfg);

    ~RemoteAgent() override;

    std::vector<ActionIndex> GetAction(std::span<const StateVector> states, bool explore) override;
    LossReport Update(std::span<const Transition> transitions) override;

    /// Asks the agent to write its model file.
    void Save(const std::string& path);
    /// Sends shutdown and waits for the acknowledgement; idempotent.
    void Shutdown();

    std::uint64_t LastStep() const { return m_step; }

  private:
    Envelope Request(Message msg);

    std::unique_ptr<LineChannel> m_channel;
    RemoteAgentConfig m_cfg;
    std::uint64_t m_step = 0;
    int m_childPid = -1;
    bool m_closed = false;
};

using SaveHandler = std::function<void(const std::string& path)>;

/// Agent-side loop: answers requests until shutdown or end of stream.
/// Protocol violations are reported to the peer where possible and then
/// rethrown.
void ServeAgent(LineChannel& channel, AgentInterface& agent, const SaveHandler& save);

} // namespace ranai::bridge
