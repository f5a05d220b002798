#pragma once

#include "ranai/agent/dqn_agent.hpp"
#include "ranai/agent/reward.hpp"
#include "ranai/app/frame_source.hpp"
#include "ranai/app/sensor_app.hpp"
#include "ranai/channel/synthetic_channel.hpp"
#include "ranai/controller/ranai_controller.hpp"
#include "ranai/ran/ran_cell.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace ranai {

/// Validation failure carrying every problem found, one per item.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> items);
    const std::vector<std::string>& Items() const { return m_items; }

  private:
    std::vector<std::string> m_items;
};

struct Policy
{
    enum class Kind
    {
        Dql,
        Constant,
    };
    Kind kind = Kind::Dql;
    std::string mode; // Constant only

    /// "dql" or "constant:<mode name>".
    static Policy Parse(const std::string& s);
    std::string ToString() const;
    bool operator==(const Policy&) const = default;
};

enum class AgentMode
{
    Train,
    Evaluate,
    Off,
};

enum class ChannelSource
{
    Synthetic,
    Trace,
};

struct ScenarioConfig
{
    std::size_t numUes = 1;
    double durationSeconds = 80.0;
    ChannelSource channel = ChannelSource::Synthetic;
    std::string tracePath;
    SynthChannelConfig synth;
    LoopRouteConfig route;
};

struct AppConfig
{
    bool enabled = true;
    ModeTable modes = ModeTable::Default();
    SensorAppConfig sensor;
    double frameJitter = 0.1;
    std::string frameTracePath;
    LoopMode traceLoop = LoopMode::Restart;
    std::string initialMode = "C-R"; // used by the dql policy
    bool cbrEnabled = true;
    std::uint32_t cbrPacketBytes = 200;
    SimTime cbrInterval = SimTime::Millis(5);
};

struct AgentConfig
{
    AgentMode mode = AgentMode::Train;
    AgentHyperparams hyper;
    std::string modelPath;     // loaded before the run when set
    std::string remoteCommand; // external agent instead of the built-in one
    double remoteTimeoutSeconds = 30.0;
};

struct OutputConfig
{
    bool controllerLog = true;
    bool cellLog = true;
    bool bursts = true;
    bool ttiLog = false;
    bool channelTrace = false;
};

struct RunConfig
{
    std::uint64_t seed = 1;
    Policy policy;
    std::string outputDir = "out";
    ScenarioConfig scenario;
    RanConfig ran;
    AppConfig app;
    ControllerConfig controller;
    AgentConfig agent;
    RewardConfig reward;
    OutputConfig outputs;

    /// Every problem found, empty when the configuration is usable.
    std::vector<std::string> Problems() const;
    /// Throws ConfigError listing Problems() when there are any.
    void Validate() const;

    SimTime Duration() const { return SimTime::Seconds(scenario.durationSeconds); }
};

/// Overlays the document on the defaults. Unknown keys and wrongly typed
/// values are reported together with Problems() in one ConfigError.
RunConfig ParseRunConfig(const nlohmann::json& doc);
RunConfig LoadRunConfig(const std::string& path);

/// Fully resolved configuration, readable back by ParseRunConfig.
nlohmann::json ToJson(const RunConfig& cfg);

} // namespace ranai
