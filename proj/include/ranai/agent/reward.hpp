#pragma once

#include "ranai/app/stats_calculator.hpp"

namespace ranai {

struct RewardConfig
{
    double alpha = 1.0;        // QoS/QoE weight
    double maxDelay = 0.050;   // delta_M, seconds
    double minPrr = 1.0;       // PRR_m
    double maxChamfer = 45.0;  // CD_sym,m

    void Validate() const;
};

/// QoE of a mode: (CD_max - CD) / CD_max, clipped to [0, 1].
double QoeOf(const RewardConfig& cfg, double chamferDistance);

/// Zero when the QoS requirement fails (delay >= delta_M or PRR < PRR_m);
/// otherwise (1 - alpha)(delta_M - delay)/delta_M + alpha * QoE, clipped to
/// [0, 1]. Delay in seconds.
double ComputeReward(const RewardConfig& cfg, double delay, double prr, double chamferDistance);

/// Window form. A window with no completed burst contributes zero delay;
/// its PRR then decides the gate.
double ComputeReward(const RewardConfig& cfg, const AppStatsWindow& window, double chamferDistance);

} // namespace ranai
