#include "ranai/bridge/remote_agent.hpp"

#include <csignal>
#include <cstring>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

namespace ranai::bridge {

RemoteAgent::RemoteAgent(std::unique_ptr<LineChannel> channel, RemoteAgentConfig cfg)
    : m_channel(std::move(channel)),
      m_cfg(std::move(cfg))
{
    HelloMsg hello;
    hello.role = "simulator";
    hello.numUsers = m_cfg.numUsers;
    hello.stateDim = m_cfg.stateDim;
    hello.numActions = m_cfg.numActions;
    m_channel->WriteLine(Encode({m_cfg.runId, hello}));

    auto line = m_channel->ReadLine(m_cfg.timeout);
    if (!line)
    {
        throw BridgeError("external agent did not answer hello");
    }
    const auto reply = Decode(*line);
    const auto* h = std::get_if<HelloMsg>(&reply.message);
    if (!h)
    {
        throw ProtocolError("expected hello, got " + std::string(TypeName(reply.message)));
    }
    if (!h->accepted || h->version != kProtocolVersion)
    {
        throw ProtocolError("external agent refused the session: " +
                            (h->error.empty() ? "version " + std::to_string(h->version) : h->error));
    }
}

std::unique_ptr<RemoteAgent>
RemoteAgent::Spawn(const std::string& command, RemoteAgentConfig cfg)
{
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
    {
        throw BridgeError(std::string("socketpair failed: ") + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0)
    {
        ::close(fds[0]);
        ::close(fds[1]);
        throw BridgeError(std::string("fork failed: ") + std::strerror(errno));
    }
    if (pid == 0)
    {
        ::dup2(fds[1], STDIN_FILENO);
        ::dup2(fds[1], STDOUT_FILENO);
        ::close(fds[0]);
        ::close(fds[1]);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::close(fds[1]);
    auto channel = std::make_unique<LineChannel>(fds[0], fds[0], true);
    try
    {
        auto agent = std::make_unique<RemoteAgent>(std::move(channel), std::move(cfg));
        agent->m_childPid = pid;
        return agent;
    }
    catch (...)
    {
        ::kill(pid, SIGTERM);
        ::waitpid(pid, nullptr, 0);
        throw;
    }
}

RemoteAgent::~RemoteAgent()
{
    try
    {
        Shutdown();
    }
    catch (...)
    {
    }
    m_channel.reset();
    if (m_childPid > 0)
    {
        int status = 0;
        if (::waitpid(m_childPid, &status, WNOHANG) == 0)
        {
            ::kill(m_childPid, SIGTERM);
            ::waitpid(m_childPid, &status, 0);
        }
    }
}

Envelope
RemoteAgent::Request(Message msg)
{
    if (m_closed)
    {
        throw BridgeError("remote agent session already shut down");
    }
    const std::uint64_t step = *StepOf(msg);
    std::optional<std::string> line;
    try
    {
        m_channel->WriteLine(Encode({m_cfg.runId, std::move(msg)}));
        line = m_channel->ReadLine(m_cfg.timeout);
    }
    catch (const BridgeError& e)
    {
        m_closed = true;
        throw BridgeError("external agent lost at step " + std::to_string(step) + ": " + e.what());
    }
    if (!line)
    {
        m_closed = true;
        throw BridgeError("external agent timed out at step " + std::to_string(step) + " after " +
                          std::to_string(m_cfg.timeout.count()) + " ms");
    }
    auto reply = Decode(*line);
    const auto replyStep = StepOf(reply.message);
    if (!replyStep || *replyStep != step)
    {
        throw ProtocolError("reply to step " + std::to_string(step) + " carries step " +
                            (replyStep ? std::to_string(*replyStep) : "none"));
    }
    if (const auto* ack = std::get_if<AckMsg>(&reply.message); ack && !ack->ok)
    {
        throw ProtocolError("external agent reported an error at step " + std::to_string(step) +
                            ": " + ack->error);
    }
    return reply;
}

std::vector<ActionIndex>
RemoteAgent::GetAction(std::span<const StateVector> states, bool explore)
{
    StateBatchMsg msg;
    msg.step = ++m_step;
    msg.explore = explore;
    for (std::size_t i = 0; i < states.size(); ++i)
    {
        msg.ues.push_back(static_cast<UeIndex>(i));
        msg.states.push_back(states[i]);
    }
    const auto expectedUes = msg.ues;
    const auto reply = Request(std::move(msg));
    const auto* a = std::get_if<ActionBatchMsg>(&reply.message);
    if (!a)
    {
        throw ProtocolError("expected action_batch, got " + std::string(TypeName(reply.message)));
    }
    if (a->ues != expectedUes)
    {
        throw ProtocolError("action_batch ue order differs from state_batch at step " +
                            std::to_string(m_step));
    }
    for (auto act : a->actions)
    {
        if (act >= m_cfg.numActions)
        {
            throw ProtocolError("action " + std::to_string(act) + " out of range at step " +
                                std::to_string(m_step));
        }
    }
    return a->actions;
}

LossReport
RemoteAgent::Update(std::span<const Transition> transitions)
{
    TransitionBatchMsg msg;
    msg.step = ++m_step;
    msg.transitions.assign(transitions.begin(), transitions.end());
    const auto reply = Request(std::move(msg));
    const auto* ack = std::get_if<AckMsg>(&reply.message);
    if (!ack)
    {
        throw ProtocolError("expected ack, got " + std::string(TypeName(reply.message)));
    }
    return ack->report;
}

void
RemoteAgent::Save(const std::string& path)
{
    const auto reply = Request(SaveMsg{++m_step, path});
    if (!std::holds_alternative<AckMsg>(reply.message))
    {
        throw ProtocolError("expected ack to save");
    }
}

void
RemoteAgent::Shutdown()
{
    if (m_closed)
    {
        return;
    }
    Request(ShutdownMsg{++m_step});
    m_closed = true;
}

void
ServeAgent(LineChannel& channel, AgentInterface& agent, const SaveHandler& save)
{
    StepTracker steps;
    std::string runId;
    bool greeted = false;
    while (true)
    {
        std::optional<std::string> line;
        try
        {
            line = channel.ReadLine(std::chrono::milliseconds(-1));
        }
        catch (const BridgeError&)
        {
            return; // peer went away
        }
        Envelope in;
        try
        {
            in = Decode(*line);
        }
        catch (const ProtocolError& e)
        {
            channel.WriteLine(Encode({runId, AckMsg{steps.Last().value_or(0), {}, false, e.what()}}));
            throw;
        }

        if (auto* h = std::get_if<HelloMsg>(&in.message))
        {
            HelloMsg reply;
            reply.role = "agent";
            reply.numUsers = h->numUsers;
            reply.stateDim = h->stateDim;
            reply.numActions = h->numActions;
            if (h->version != kProtocolVersion)
            {
                reply.accepted = false;
                reply.error = "unsupported protocol version " + std::to_string(h->version);
            }
            channel.WriteLine(Encode({in.runId, reply}));
            if (!reply.accepted)
            {
                throw ProtocolError(reply.error);
            }
            runId = in.runId;
            greeted = true;
            continue;
        }
        const std::uint64_t step = *StepOf(in.message);
        try
        {
            if (!greeted)
            {
                throw ProtocolError("request before hello");
            }
            steps.Accept(step);
        }
        catch (const ProtocolError& e)
        {
            channel.WriteLine(Encode({runId, AckMsg{step, {}, false, e.what()}}));
            throw;
        }

        if (auto* s = std::get_if<StateBatchMsg>(&in.message))
        {
            ActionBatchMsg reply;
            reply.step = step;
            reply.ues = s->ues;
            reply.actions = agent.GetAction(s->states, s->explore);
            channel.WriteLine(Encode({runId, reply}));
        }
        else if (auto* t = std::get_if<TransitionBatchMsg>(&in.message))
        {
            AckMsg reply;
            reply.step = step;
            reply.report = agent.Update(t->transitions);
            channel.WriteLine(Encode({runId, reply}));
        }
        else if (auto* sv = std::get_if<SaveMsg>(&in.message))
        {
            AckMsg reply;
            reply.step = step;
            try
            {
                if (!save)
                {
                    throw std::runtime_error("saving not supported");
                }
                save(sv->path);
            }
            catch (const std::exception& e)
            {
                reply.ok = false;
                reply.error = e.what();
            }
            channel.WriteLine(Encode({runId, reply}));
        }
        else if (std::holds_alternative<ShutdownMsg>(in.message))
        {
            channel.WriteLine(Encode({runId, AckMsg{step, {}, true, {}}}));
            return;
        }
        else
        {
            const std::string msg =
                "unexpected message type " + std::string(TypeName(in.message));
            channel.WriteLine(Encode({runId, AckMsg{step, {}, false, msg}}));
            throw ProtocolError(msg);
        }
    }
}

} // namespace ranai::bridge
