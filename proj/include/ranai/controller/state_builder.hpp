#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/app/stats_calculator.hpp"

namespace ranai {

inline constexpr std::size_t kStateFeatures = 8;

/// Full-stack measurements of one UE over one controller window.
struct KpiWindow
{
    AppStatsWindow app;
    double meanSnrDb = 0.0;     // uplink, averaged over the window's TTIs
    double meanShare = 0.0;     // uplink scheduler share, same averaging
    double bufferFraction = 0.0; // uplink RLC occupancy at window close
    std::uint64_t servedBytes = 0;
    ModeIndex currentMode = 0;
    std::uint64_t lastFrameBytes = 0;
};

struct StateScales
{
    double maxDelay = 0.050; // seconds
    std::size_t numModes = 3;
    double maxFrameBytes = 1.0;
};

/// Feature order:
///   0 mean burst delay / maxDelay in [0, 2] (2 when bursts were sent but
///     none completed, 0 when nothing was sent)
///   1 window PRR
///   2 application goodput in Mbit/s / 100
///   3 mean uplink SNR dB / 30 in [-1, 2]
///   4 uplink buffer occupancy
///   5 mean uplink share
///   6 current mode index / (numModes - 1)
///   7 last frame size / maxFrameBytes in [0, 1]
StateVector BuildStateVector(const KpiWindow& k, const StateScales& scales);

} // namespace ranai
