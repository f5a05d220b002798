#pragma once

#include "ranai/agent/agent_interface.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace ranai::bridge {

inline constexpr int kProtocolVersion = 1;

class ProtocolError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct HelloMsg
{
    int version = kProtocolVersion;
    std::string role; // "simulator" or "agent"
    std::size_t numUsers = 0;
    std::size_t stateDim = 0;
    std::size_t numActions = 0;
    bool accepted = true;
    std::string error;
};

struct StateBatchMsg
{
    std::uint64_t step = 0;
    bool explore = false;
    std::vector<UeIndex> ues;
    std::vector<StateVector> states;
};

struct ActionBatchMsg
{
    std::uint64_t step = 0;
    std::vector<UeIndex> ues;
    std::vector<ActionIndex> actions;
};

struct TransitionBatchMsg
{
    std::uint64_t step = 0;
    std::vector<Transition> transitions;
};

struct AckMsg
{
    std::uint64_t step = 0;
    LossReport report;
    bool ok = true;
    std::string error;
};

struct SaveMsg
{
    std::uint64_t step = 0;
    std::string path;
};

struct ShutdownMsg
{
    std::uint64_t step = 0;
};

using Message = std::variant<HelloMsg,
                             StateBatchMsg,
                             ActionBatchMsg,
                             TransitionBatchMsg,
                             AckMsg,
                             SaveMsg,
                             ShutdownMsg>;

struct Envelope
{
    std::string runId;
    Message message;
};

std::string_view TypeName(const Message& m);

/// One JSON object without the trailing newline. Doubles are written in
/// their shortest exactly round-tripping form.
std::string Encode(const Envelope& e);

/// Throws ProtocolError for malformed JSON, a missing or wrong version,
/// an unknown type or a payload that does not match its type.
Envelope Decode(std::string_view line);

/// Step index of a message; hello carries none and returns nullopt.
std::optional<std::uint64_t> StepOf(const Message& m);

/// Enforces strictly increasing step indices on one side of a session.
class StepTracker
{
  public:
    void Accept(std::uint64_t step);
    std::optional<std::uint64_t> Last() const { return m_last; }

  private:
    std::optional<std::uint64_t> m_last;
};

} // namespace ranai::bridge
