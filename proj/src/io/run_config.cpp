#include "ranai/io/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ranai {

using nlohmann::json;

namespace {

std::string
JoinItems(const std::vector<std::string>& items)
{
    std::string s = "invalid configuration:";
    for (const auto& i : items)
    {
        s += "\n  - " + i;
    }
    return s;
}

/// Reads optional keys of one JSON object into defaults and remembers which
/// keys were consumed, so leftovers can be reported as unknown.
class Reader
{
  public:
    Reader(const json* obj, std::string path, std::vector<std::string>& errors)
        : m_obj(obj),
          m_path(std::move(path)),
          m_errors(errors)
    {
        if (m_obj && !m_obj->is_object())
        {
            m_errors.push_back(m_path + ": expected an object");
            m_obj = nullptr;
        }
    }

    bool Has(const char* key) const { return m_obj && m_obj->contains(key); }

    template <typename T>
    void Get(const char* key, T& out)
    {
        if (!Has(key))
        {
            return;
        }
        m_used.insert(key);
        try
        {
            out = m_obj->at(key).get<T>();
        }
        catch (const json::exception&)
        {
            m_errors.push_back(Name(key) + ": wrong type");
        }
    }

    /// Durations are given in milliseconds (or seconds with the _s keys).
    void GetMillis(const char* key, SimTime& out)
    {
        double ms = out.GetMillis();
        const bool had = Has(key);
        Get(key, ms);
        if (had)
        {
            SetTime(key, ms / 1e3, out);
        }
    }

    Reader Child(const char* key)
    {
        if (!Has(key))
        {
            return Reader(nullptr, Name(key), m_errors);
        }
        m_used.insert(key);
        return Reader(&m_obj->at(key), Name(key), m_errors);
    }

    const json* Raw(const char* key)
    {
        if (!Has(key))
        {
            return nullptr;
        }
        m_used.insert(key);
        return &m_obj->at(key);
    }

    std::string Name(const char* key) const { return m_path.empty() ? key : m_path + "." + key; }

    void Error(const std::string& msg) { m_errors.push_back(msg); }

    void Finish()
    {
        if (!m_obj)
        {
            return;
        }
        for (const auto& [k, v] : m_obj->items())
        {
            if (!m_used.count(k))
            {
                m_errors.push_back(Name(k.c_str()) + ": unknown key");
            }
        }
    }

  private:
    void SetTime(const char* key, double seconds, SimTime& out)
    {
        if (!std::isfinite(seconds) || seconds < 0.0)
        {
            m_errors.push_back(Name(key) + ": must be a non-negative duration");
            return;
        }
        out = SimTime::Seconds(seconds);
    }

    const json* m_obj;
    std::string m_path;
    std::vector<std::string>& m_errors;
    std::set<std::string> m_used;
};

void
ReadBudget(Reader r, LinkBudgetConfig& b)
{
    r.Get("tx_power_dbm", b.txPowerDbm);
    r.Get("bandwidth_hz", b.bandwidthHz);
    r.Get("noise_figure_db", b.noiseFigureDb);
    r.Get("carrier_frequency_hz", b.carrierFrequencyHz);
    r.Finish();
}

json
BudgetJson(const LinkBudgetConfig& b)
{
    return {{"tx_power_dbm", b.txPowerDbm},
            {"bandwidth_hz", b.bandwidthHz},
            {"noise_figure_db", b.noiseFigureDb},
            {"carrier_frequency_hz", b.carrierFrequencyHz}};
}

std::string
AgentModeName(AgentMode m)
{
    switch (m)
    {
    case AgentMode::Train:
        return "train";
    case AgentMode::Evaluate:
        return "evaluate";
    case AgentMode::Off:
        return "off";
    }
    return "off";
}

template <typename F>
void
Check(std::vector<std::string>& out, const char* prefix, F&& f)
{
    try
    {
        f();
    }
    catch (const std::exception& e)
    {
        out.push_back(std::string(prefix) + ": " + e.what());
    }
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> items)
    : std::runtime_error(JoinItems(items)),
      m_items(std::move(items))
{
}

Policy
Policy::Parse(const std::string& s)
{
    if (s == "dql")
    {
        return {Kind::Dql, {}};
    }
    const std::string prefix = "constant:";
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size())
    {
        return {Kind::Constant, s.substr(prefix.size())};
    }
    throw std::invalid_argument("unknown policy '" + s + "' (expected dql or constant:<mode>)");
}

std::string
Policy::ToString() const
{
    return kind == Kind::Dql ? "dql" : "constant:" + mode;
}

std::vector<std::string>
RunConfig::Problems() const
{
    std::vector<std::string> p;
    const auto& sc = scenario;
    if (sc.numUes == 0)
    {
        p.push_back("scenario.num_ues: must be at least 1");
    }
    if (!(sc.durationSeconds > 0.0) || !std::isfinite(sc.durationSeconds))
    {
        p.push_back("scenario.duration_s: must be positive");
    }
    if (sc.channel == ChannelSource::Trace && sc.tracePath.empty())
    {
        p.push_back("scenario.channel.trace_path: required when source is trace");
    }
    if (sc.channel == ChannelSource::Synthetic)
    {
        Check(p, "scenario.channel.synthetic", [&] { sc.synth.Validate(); });
        if (sc.route.vertices.size() < 2 || !(sc.route.speed > 0.0) || sc.route.slots == 0 ||
            sc.route.startJitter < 0.0 || sc.route.startJitter > 1.0)
        {
            p.push_back("scenario.channel.route: needs >= 2 vertices, positive speed and slots, "
                        "start_jitter in [0, 1]");
        }
    }

    Check(p, "ran", [&] { ran.Validate(); });
    Check(p, "controller", [&] { controller.Validate(); });
    Check(p, "reward", [&] { reward.Validate(); });

    const SimTime period = controller.period;
    if (period > SimTime() && std::isfinite(sc.durationSeconds) && sc.durationSeconds > 0.0 &&
        Duration().GetMicros() % period.GetMicros() != 0)
    {
        p.push_back("scenario.duration_s: must be a multiple of controller.period_ms");
    }
    if (period > SimTime() && ran.tti.tti > SimTime() &&
        period.GetMicros() % ran.tti.tti.GetMicros() != 0)
    {
        p.push_back("controller.period_ms: must be a multiple of ran.tti_ms");
    }

    if (app.sensor.framePeriod <= SimTime())
    {
        p.push_back("app.frame_period_ms: must be positive");
    }
    if (app.sensor.mtuPayload == 0)
    {
        p.push_back("app.mtu_payload: must be positive");
    }
    if (!(app.frameJitter >= 0.0 && app.frameJitter < 1.0))
    {
        p.push_back("app.frame_jitter: must lie in [0, 1)");
    }
    if (app.cbrEnabled && (app.cbrPacketBytes == 0 || app.cbrInterval <= SimTime()))
    {
        p.push_back("app.cbr: packet_bytes and interval_ms must be positive");
    }
    if (!app.modes.Find(app.initialMode))
    {
        p.push_back("app.initial_mode: unknown mode '" + app.initialMode + "'");
    }
    for (const auto& m : app.modes.Modes())
    {
        if (m.chamferDistance > reward.maxChamfer)
        {
            p.push_back("app.modes: chamfer distance of " + m.name + " exceeds reward.max_chamfer");
        }
    }

    if (policy.kind == Policy::Kind::Constant)
    {
        if (!app.modes.Find(policy.mode))
        {
            p.push_back("policy: unknown mode '" + policy.mode + "'");
        }
    }
    else
    {
        Check(p, "agent", [&] { agent.hyper.Validate(); });
        const auto& layers = agent.hyper.layers;
        if (!layers.empty() && layers.front() != kStateFeatures)
        {
            p.push_back("agent.layers: input width must be " + std::to_string(kStateFeatures));
        }
        if (!layers.empty() && layers.back() != app.modes.Size())
        {
            p.push_back("agent.layers: output width must equal the number of modes (" +
                        std::to_string(app.modes.Size()) + ")");
        }
        if (agent.mode == AgentMode::Off)
        {
            p.push_back("agent.mode: the dql policy needs agent mode train or evaluate");
        }
        if (!(agent.remoteTimeoutSeconds > 0.0))
        {
            p.push_back("agent.remote_timeout_s: must be positive");
        }
    }
    if (outputDir.empty())
    {
        p.push_back("output_dir: must not be empty");
    }
    return p;
}

void
RunConfig::Validate() const
{
    auto p = Problems();
    if (!p.empty())
    {
        throw ConfigError(std::move(p));
    }
}

RunConfig
ParseRunConfig(const json& doc)
{
    RunConfig cfg;
    std::vector<std::string> errors;
    Reader root(&doc, "", errors);

    root.Get("seed", cfg.seed);
    root.Get("output_dir", cfg.outputDir);
    if (root.Has("policy"))
    {
        std::string s;
        root.Get("policy", s);
        try
        {
            cfg.policy = Policy::Parse(s);
        }
        catch (const std::exception& e)
        {
            errors.push_back(std::string("policy: ") + e.what());
        }
    }

    {
        auto r = root.Child("scenario");
        r.Get("num_ues", cfg.scenario.numUes);
        r.Get("duration_s", cfg.scenario.durationSeconds);
        auto ch = r.Child("channel");
        std::string source = "synthetic";
        ch.Get("source", source);
        if (source == "synthetic")
        {
            cfg.scenario.channel = ChannelSource::Synthetic;
        }
        else if (source == "trace")
        {
            cfg.scenario.channel = ChannelSource::Trace;
        }
        else
        {
            errors.push_back("scenario.channel.source: expected synthetic or trace");
        }
        ch.Get("trace_path", cfg.scenario.tracePath);
        auto& s = cfg.scenario.synth;
        auto sy = ch.Child("synthetic");
        sy.Get("gnb_x", s.gnbX);
        sy.Get("gnb_y", s.gnbY);
        sy.Get("gnb_height_m", s.gnbHeight);
        sy.Get("ue_height_m", s.ueHeight);
        sy.Get("reference_loss_db", s.referenceLossDb);
        sy.Get("reference_distance_m", s.referenceDistance);
        sy.Get("exponent", s.exponent);
        sy.Get("min_distance_m", s.minDistance);
        sy.Get("shadowing_sigma_db", s.shadowingSigmaDb);
        sy.Get("shadowing_corr_time_s", s.shadowingCorrTime);
        sy.Get("time_step_s", s.timeStep);
        sy.Finish();
        auto& route = cfg.scenario.route;
        auto ro = ch.Child("route");
        ro.Get("vertices", route.vertices);
        ro.Get("speed_mps", route.speed);
        ro.Get("slots", route.slots);
        ro.Get("start_jitter", route.startJitter);
        ro.Finish();
        ch.Finish();
        r.Finish();
    }
    cfg.scenario.synth.duration = cfg.scenario.durationSeconds;

    {
        auto r = root.Child("ran");
        r.GetMillis("tti_ms", cfg.ran.tti.tti);
        r.Get("mac_efficiency", cfg.ran.tti.macEfficiency);
        r.Get("se_max", cfg.ran.tti.seMax);
        r.Get("snr_outage_db", cfg.ran.tti.snrOutageDb);
        ReadBudget(r.Child("uplink"), cfg.ran.uplinkBudget);
        ReadBudget(r.Child("downlink"), cfg.ran.downlinkBudget);
        r.Get("uplink_buffer_bytes", cfg.ran.uplinkBufferBytes);
        r.Get("downlink_buffer_bytes", cfg.ran.downlinkBufferBytes);
        r.Get("notification_loss_prob", cfg.ran.notificationLossProb);
        r.GetMillis("notification_expiry_ms", cfg.ran.notificationExpiry);
        r.Finish();
    }

    {
        auto r = root.Child("app");
        auto& a = cfg.app;
        r.Get("enabled", a.enabled);
        if (const json* modes = r.Raw("modes"))
        {
            try
            {
                if (!modes->is_array())
                {
                    throw std::invalid_argument("expected an array of modes");
                }
                std::vector<AppMode> list;
                for (const auto& m : *modes)
                {
                    list.push_back({m.at("name").get<std::string>(),
                                    m.at("mean_frame_bytes").get<double>(),
                                    m.at("chamfer_distance").get<double>()});
                }
                a.modes = ModeTable(std::move(list));
            }
            catch (const std::exception& e)
            {
                errors.push_back(std::string("app.modes: ") + e.what());
            }
        }
        r.GetMillis("frame_period_ms", a.sensor.framePeriod);
        r.Get("mtu_payload", a.sensor.mtuPayload);
        r.Get("frame_jitter", a.frameJitter);
        r.Get("frame_trace", a.frameTracePath);
        std::string loop = a.traceLoop == LoopMode::Restart ? "restart" : "stop";
        r.Get("trace_loop", loop);
        if (loop == "restart")
        {
            a.traceLoop = LoopMode::Restart;
        }
        else if (loop == "stop")
        {
            a.traceLoop = LoopMode::Stop;
        }
        else
        {
            errors.push_back("app.trace_loop: expected restart or stop");
        }
        r.Get("initial_mode", a.initialMode);
        auto c = r.Child("cbr");
        c.Get("enabled", a.cbrEnabled);
        c.Get("packet_bytes", a.cbrPacketBytes);
        c.GetMillis("interval_ms", a.cbrInterval);
        c.Finish();
        r.Finish();
    }

    {
        auto r = root.Child("controller");
        r.GetMillis("period_ms", cfg.controller.period);
        std::string mech(ToString(cfg.controller.mechanism));
        r.Get("mechanism", mech);
        try
        {
            cfg.controller.mechanism = ParseMechanism(mech);
        }
        catch (const std::exception& e)
        {
            errors.push_back(std::string("controller.mechanism: ") + e.what());
        }
        r.Finish();
    }

    {
        auto r = root.Child("agent");
        auto& ag = cfg.agent;
        std::string mode = AgentModeName(ag.mode);
        r.Get("mode", mode);
        if (mode == "train")
        {
            ag.mode = AgentMode::Train;
        }
        else if (mode == "evaluate")
        {
            ag.mode = AgentMode::Evaluate;
        }
        else if (mode == "off")
        {
            ag.mode = AgentMode::Off;
        }
        else
        {
            errors.push_back("agent.mode: expected train, evaluate or off");
        }
        auto& h = ag.hyper;
        r.Get("layers", h.layers);
        r.Get("discount", h.discount);
        r.Get("learning_rate", h.learningRate);
        r.Get("weight_decay", h.weightDecay);
        r.Get("batch_size", h.batchSize);
        r.Get("replay_capacity", h.replayCapacity);
        r.Get("target_sync_period", h.targetSyncPeriod);
        r.Get("epsilon_start", h.epsilonStart);
        r.Get("epsilon_end", h.epsilonEnd);
        r.Get("epsilon_decay_steps", h.epsilonDecaySteps);
        r.Get("model_path", ag.modelPath);
        r.Get("remote_command", ag.remoteCommand);
        r.Get("remote_timeout_s", ag.remoteTimeoutSeconds);
        r.Finish();
    }

    {
        auto r = root.Child("reward");
        r.Get("alpha", cfg.reward.alpha);
        double ms = cfg.reward.maxDelay * 1e3;
        if (r.Has("max_delay_ms"))
        {
            r.Get("max_delay_ms", ms);
            cfg.reward.maxDelay = ms / 1e3;
        }
        r.Get("min_prr", cfg.reward.minPrr);
        r.Get("max_chamfer", cfg.reward.maxChamfer);
        r.Finish();
    }

    {
        auto r = root.Child("outputs");
        r.Get("controller_log", cfg.outputs.controllerLog);
        r.Get("cell_log", cfg.outputs.cellLog);
        r.Get("bursts", cfg.outputs.bursts);
        r.Get("tti_log", cfg.outputs.ttiLog);
        r.Get("channel_trace", cfg.outputs.channelTrace);
        r.Finish();
    }
    root.Finish();

    if (errors.empty())
    {
        errors = cfg.Problems();
    }
    else
    {
        for (auto& p : cfg.Problems())
        {
            errors.push_back(std::move(p));
        }
    }
    if (!errors.empty())
    {
        throw ConfigError(std::move(errors));
    }
    return cfg;
}

RunConfig
LoadRunConfig(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError({"cannot open configuration file " + path});
    }
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError({path + ": " + e.what()});
    }
    return ParseRunConfig(doc);
}

json
ToJson(const RunConfig& cfg)
{
    const auto& sc = cfg.scenario;
    const auto& s = sc.synth;
    json modes = json::array();
    for (const auto& m : cfg.app.modes.Modes())
    {
        modes.push_back({{"name", m.name},
                         {"mean_frame_bytes", m.meanFrameBytes},
                         {"chamfer_distance", m.chamferDistance}});
    }
    const auto& h = cfg.agent.hyper;
    return {
        {"seed", cfg.seed},
        {"policy", cfg.policy.ToString()},
        {"output_dir", cfg.outputDir},
        {"scenario",
         {{"num_ues", sc.numUes},
          {"duration_s", sc.durationSeconds},
          {"channel",
           {{"source", sc.channel == ChannelSource::Synthetic ? "synthetic" : "trace"},
            {"trace_path", sc.tracePath},
            {"synthetic",
             {{"gnb_x", s.gnbX},
              {"gnb_y", s.gnbY},
              {"gnb_height_m", s.gnbHeight},
              {"ue_height_m", s.ueHeight},
              {"reference_loss_db", s.referenceLossDb},
              {"reference_distance_m", s.referenceDistance},
              {"exponent", s.exponent},
              {"min_distance_m", s.minDistance},
              {"shadowing_sigma_db", s.shadowingSigmaDb},
              {"shadowing_corr_time_s", s.shadowingCorrTime},
              {"time_step_s", s.timeStep}}},
            {"route",
             {{"vertices", sc.route.vertices},
              {"speed_mps", sc.route.speed},
              {"slots", sc.route.slots},
              {"start_jitter", sc.route.startJitter}}}}}}},
        {"ran",
         {{"tti_ms", cfg.ran.tti.tti.GetMillis()},
          {"mac_efficiency", cfg.ran.tti.macEfficiency},
          {"se_max", cfg.ran.tti.seMax},
          {"snr_outage_db", cfg.ran.tti.snrOutageDb},
          {"uplink", BudgetJson(cfg.ran.uplinkBudget)},
          {"downlink", BudgetJson(cfg.ran.downlinkBudget)},
          {"uplink_buffer_bytes", cfg.ran.uplinkBufferBytes},
          {"downlink_buffer_bytes", cfg.ran.downlinkBufferBytes},
          {"notification_loss_prob", cfg.ran.notificationLossProb},
          {"notification_expiry_ms", cfg.ran.notificationExpiry.GetMillis()}}},
        {"app",
         {{"enabled", cfg.app.enabled},
          {"modes", modes},
          {"frame_period_ms", cfg.app.sensor.framePeriod.GetMillis()},
          {"mtu_payload", cfg.app.sensor.mtuPayload},
          {"frame_jitter", cfg.app.frameJitter},
          {"frame_trace", cfg.app.frameTracePath},
          {"trace_loop", cfg.app.traceLoop == LoopMode::Restart ? "restart" : "stop"},
          {"initial_mode", cfg.app.initialMode},
          {"cbr",
           {{"enabled", cfg.app.cbrEnabled},
            {"packet_bytes", cfg.app.cbrPacketBytes},
            {"interval_ms", cfg.app.cbrInterval.GetMillis()}}}}},
        {"controller",
         {{"period_ms", cfg.controller.period.GetMillis()},
          {"mechanism", std::string(ToString(cfg.controller.mechanism))}}},
        {"agent",
         {{"mode", AgentModeName(cfg.agent.mode)},
          {"layers", h.layers},
          {"discount", h.discount},
          {"learning_rate", h.learningRate},
          {"weight_decay", h.weightDecay},
          {"batch_size", h.batchSize},
          {"replay_capacity", h.replayCapacity},
          {"target_sync_period", h.targetSyncPeriod},
          {"epsilon_start", h.epsilonStart},
          {"epsilon_end", h.epsilonEnd},
          {"epsilon_decay_steps", h.epsilonDecaySteps},
          {"model_path", cfg.agent.modelPath},
          {"remote_command", cfg.agent.remoteCommand},
          {"remote_timeout_s", cfg.agent.remoteTimeoutSeconds}}},
        {"reward",
         {{"alpha", cfg.reward.alpha},
          {"max_delay_ms", cfg.reward.maxDelay * 1e3},
          {"min_prr", cfg.reward.minPrr},
          {"max_chamfer", cfg.reward.maxChamfer}}},
        {"outputs",
         {{"controller_log", cfg.outputs.controllerLog},
          {"cell_log", cfg.outputs.cellLog},
          {"bursts", cfg.outputs.bursts},
          {"tti_log", cfg.outputs.ttiLog},
          {"channel_trace", cfg.outputs.channelTrace}}},
    };
}

} // namespace ranai
