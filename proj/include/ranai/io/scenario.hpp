#pragma once

#include "ranai/channel/channel_trace.hpp"
#include "ranai/io/run_config.hpp"

#include <iosfwd>
#include <memory>

namespace ranai {

struct WindowRecord
{
    AppStatsWindow window;
    double reward = 0.0;
};

struct ByteAccount
{
    std::uint64_t offered = 0;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
    std::uint64_t buffered = 0;
};

struct UeOutcome
{
    ByteAccount uplink;
    ByteAccount downlink;
    std::uint64_t burstsGenerated = 0;
    std::uint64_t burstsCompleted = 0;
    std::uint64_t incompleteBursts = 0;
    std::uint64_t duplicateFragments = 0;
    std::uint64_t transitions = 0;
    std::vector<ModeChange> modeChanges;
};

struct EpisodeResult
{
    std::vector<WindowRecord> windows; // in closing order
    std::vector<CompletedBurst> bursts; // in completion order
    std::vector<NotificationRecord> notifications;
    std::vector<UeOutcome> ues;
    std::uint64_t controllerUpdates = 0;
    std::uint64_t actionQueries = 0;
    RunReport sim;
};

/// Optional per-episode CSV sinks; null streams are skipped.
struct EpisodeStreams
{
    std::ostream* stats = nullptr;
    std::ostream* controller = nullptr;
    std::ostream* cell = nullptr;
    std::ostream* bursts = nullptr;
    std::ostream* tti = nullptr;
};

struct EpisodeOptions
{
    std::uint64_t envSeed = 0;
    AgentInterface* agent = nullptr; // null for constant policies
    bool learn = false;
    bool explore = false;
    std::function<void(const LossReport&)> onTraining;
    EpisodeStreams streams;
};

/// Synthetic trace for the configured UEs, or the trace file.
ChannelTrace BuildChannelTrace(const RunConfig& cfg, std::uint64_t envSeed);
std::shared_ptr<const FrameSizer> BuildFrameSizer(const RunConfig& cfg);

/// Initial application mode of every UE under the configured policy.
ModeIndex InitialMode(const RunConfig& cfg);

/// One run of the scenario over [0, duration).
EpisodeResult RunEpisode(const RunConfig& cfg, const EpisodeOptions& opts);

void WriteStatsHeader(std::ostream& out);
void WriteBurstsHeader(std::ostream& out);

} // namespace ranai
