#include "ranai/bridge/protocol.hpp"

#include <json.hpp>

#include <cmath>

namespace ranai::bridge {

using nlohmann::json;

namespace {

template <typename T>
T
Field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
    {
        throw ProtocolError(std::string("missing field '") + key + "'");
    }
    try
    {
        return it->get<T>();
    }
    catch (const json::exception&)
    {
        throw ProtocolError(std::string("field '") + key + "' has the wrong type");
    }
}

StateVector
ParseVector(const json& j, const char* what)
{
    if (!j.is_array())
    {
        throw ProtocolError(std::string(what) + " must be an array");
    }
    StateVector v;
    v.reserve(j.size());
    for (const auto& x : j)
    {
        if (!x.is_number())
        {
            throw ProtocolError(std::string(what) + " holds a non-number");
        }
        const double d = x.get<double>();
        if (!std::isfinite(d))
        {
            throw ProtocolError(std::string(what) + " holds a non-finite value");
        }
        v.push_back(d);
    }
    return v;
}

json
ReportToJson(const LossReport& r)
{
    return {{"trained", r.trained},
            {"update_idx", r.updateIndex},
            {"loss", r.loss},
            {"epsilon", r.epsilon},
            {"meanQ", r.meanQ}};
}

struct EncodeVisitor
{
    json& j;

    void operator()(const HelloMsg& m) const
    {
        j["type"] = "hello";
        j["version"] = m.version;
        j["role"] = m.role;
        j["n_users"] = m.numUsers;
        j["state_dim"] = m.stateDim;
        j["num_actions"] = m.numActions;
        j["accepted"] = m.accepted;
        if (!m.error.empty())
        {
            j["error"] = m.error;
        }
    }
    void operator()(const StateBatchMsg& m) const
    {
        j["type"] = "state_batch";
        j["step_idx"] = m.step;
        j["explore"] = m.explore;
        j["ues"] = m.ues;
        j["states"] = m.states;
    }
    void operator()(const ActionBatchMsg& m) const
    {
        j["type"] = "action_batch";
        j["step_idx"] = m.step;
        j["ues"] = m.ues;
        j["actions"] = m.actions;
    }
    void operator()(const TransitionBatchMsg& m) const
    {
        j["type"] = "transition_batch";
        j["step_idx"] = m.step;
        json arr = json::array();
        for (const auto& t : m.transitions)
        {
            arr.push_back({{"ue", t.ue},
                           {"s", t.state},
                           {"a", t.action},
                           {"s_next", t.nextState},
                           {"r", t.reward}});
        }
        j["transitions"] = std::move(arr);
    }
    void operator()(const AckMsg& m) const
    {
        j["type"] = "ack";
        j["step_idx"] = m.step;
        j["ok"] = m.ok;
        j["report"] = ReportToJson(m.report);
        if (!m.error.empty())
        {
            j["error"] = m.error;
        }
    }
    void operator()(const SaveMsg& m) const
    {
        j["type"] = "save";
        j["step_idx"] = m.step;
        j["path"] = m.path;
    }
    void operator()(const ShutdownMsg& m) const
    {
        j["type"] = "shutdown";
        j["step_idx"] = m.step;
    }
};

} // namespace

std::string_view
TypeName(const Message& m)
{
    static constexpr std::string_view names[] = {
        "hello", "state_batch", "action_batch", "transition_batch", "ack", "save", "shutdown"};
    return names[m.index()];
}

std::optional<std::uint64_t>
StepOf(const Message& m)
{
    return std::visit(
        [](const auto& x) -> std::optional<std::uint64_t> {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, HelloMsg>)
            {
                return std::nullopt;
            }
            else
            {
                return x.step;
            }
        },
        m);
}

std::string
Encode(const Envelope& e)
{
    json j;
    j["version"] = kProtocolVersion;
    j["run_id"] = e.runId;
    std::visit(EncodeVisitor{j}, e.message);
    return j.dump();
}

Envelope
Decode(std::string_view line)
{
    json j;
    try
    {
        j = json::parse(line);
    }
    catch (const json::parse_error& ex)
    {
        throw ProtocolError(std::string("malformed message: ") + ex.what());
    }
    if (!j.is_object())
    {
        throw ProtocolError("message is not a JSON object");
    }
    if (!j.contains("version"))
    {
        throw ProtocolError("missing field 'version'");
    }
    const int version = Field<int>(j, "version");
    const auto type = Field<std::string>(j, "type");

    Envelope e;
    e.runId = Field<std::string>(j, "run_id");

    if (type == "hello")
    {
        // Version negotiation happens on the hello itself, so a mismatch is
        // reported by the session rather than the codec.
        HelloMsg m;
        m.version = version;
        m.role = Field<std::string>(j, "role");
        m.numUsers = Field<std::size_t>(j, "n_users");
        m.stateDim = Field<std::size_t>(j, "state_dim");
        m.numActions = Field<std::size_t>(j, "num_actions");
        m.accepted = j.value("accepted", true);
        m.error = j.value("error", std::string());
        e.message = std::move(m);
        return e;
    }
    if (version != kProtocolVersion)
    {
        throw ProtocolError("unsupported protocol version " + std::to_string(version));
    }
    const auto step = Field<std::uint64_t>(j, "step_idx");

    if (type == "state_batch")
    {
        StateBatchMsg m;
        m.step = step;
        m.explore = Field<bool>(j, "explore");
        m.ues = Field<std::vector<UeIndex>>(j, "ues");
        const auto& states = j.at("states");
        if (!states.is_array() || states.size() != m.ues.size())
        {
            throw ProtocolError("state_batch needs one state per ue");
        }
        for (const auto& s : states)
        {
            m.states.push_back(ParseVector(s, "state"));
        }
        e.message = std::move(m);
    }
    else if (type == "action_batch")
    {
        ActionBatchMsg m;
        m.step = step;
        m.ues = Field<std::vector<UeIndex>>(j, "ues");
        m.actions = Field<std::vector<ActionIndex>>(j, "actions");
        if (m.ues.size() != m.actions.size())
        {
            throw ProtocolError("action_batch needs one action per ue");
        }
        e.message = std::move(m);
    }
    else if (type == "transition_batch")
    {
        TransitionBatchMsg m;
        m.step = step;
        const auto it = j.find("transitions");
        if (it == j.end() || !it->is_array())
        {
            throw ProtocolError("transition_batch needs a transitions array");
        }
        for (const auto& t : *it)
        {
            if (!t.is_object())
            {
                throw ProtocolError("transition must be an object");
            }
            Transition tr;
            tr.ue = Field<UeIndex>(t, "ue");
            tr.state = ParseVector(t.at("s"), "s");
            tr.action = Field<ActionIndex>(t, "a");
            tr.nextState = ParseVector(t.at("s_next"), "s_next");
            tr.reward = Field<double>(t, "r");
            m.transitions.push_back(std::move(tr));
        }
        e.message = std::move(m);
    }
    else if (type == "ack")
    {
        AckMsg m;
        m.step = step;
        m.ok = j.value("ok", true);
        m.error = j.value("error", std::string());
        if (auto it = j.find("report"); it != j.end() && it->is_object())
        {
            m.report.trained = it->value("trained", false);
            m.report.updateIndex = it->value("update_idx", std::uint64_t{0});
            m.report.loss = it->value("loss", 0.0);
            m.report.epsilon = it->value("epsilon", 0.0);
            m.report.meanQ = it->value("meanQ", 0.0);
        }
        e.message = std::move(m);
    }
    else if (type == "save")
    {
        e.message = SaveMsg{step, Field<std::string>(j, "path")};
    }
    else if (type == "shutdown")
    {
        e.message = ShutdownMsg{step};
    }
    else
    {
        throw ProtocolError("unknown message type '" + type + "'");
    }
    return e;
}

void
StepTracker::Accept(std::uint64_t step)
{
    if (m_last && step <= *m_last)
    {
        throw ProtocolError("step_idx " + std::to_string(step) + " does not follow " +
                            std::to_string(*m_last));
    }
    m_last = step;
}

} // namespace ranai::bridge
