#pragma once

#include "ranai/io/scenario.hpp"

#include <json.hpp>

namespace ranai {

/// Linear interpolation between closest ranks: position q * (n - 1) in the
/// sorted sample. Requires a non-empty sorted sample and q in [0, 1].
double Percentile(const std::vector<double>& sorted, double q);

struct DelayStats
{
    std::size_t count = 0;
    double meanMs = 0.0;
    double p25Ms = 0.0;
    double p50Ms = 0.0;
    double p75Ms = 0.0;
    double p95Ms = 0.0;
};

DelayStats ComputeDelayStats(std::vector<double> delaysMs);

struct Summary
{
    std::size_t windows = 0;
    /// Share of windows spent in each mode, in mode-table order.
    std::vector<double> modeFraction;
    /// sum over modes of modeFraction * QoE(mode).
    double meanQoe = 0.0;
    double meanReward = 0.0;
    DelayStats delay;
    std::vector<DelayStats> delayPerUe;
    double prrPooled = 1.0;
    std::vector<double> prrPerUe;
    /// Windows whose bursts missed the delay bound (mean delay >= bound, or
    /// bursts sent and none completed).
    double delayViolationFraction = 0.0;
    /// Windows failing the reward's QoS gate.
    double qosViolationFraction = 0.0;
    std::uint64_t burstsGenerated = 0;
    std::uint64_t burstsCompleted = 0;
    std::size_t notifications = 0;
};

Summary Summarize(const RunConfig& cfg, const EpisodeResult& r);

nlohmann::json ToJson(const Summary& s, const ModeTable& modes);

} // namespace ranai
