#include "ranai/io/summary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ranai {

double
Percentile(const std::vector<double>& sorted, double q)
{
    if (sorted.empty() || !(q >= 0.0 && q <= 1.0))
    {
        throw std::invalid_argument("Percentile: empty sample or q outside [0, 1]");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

DelayStats
ComputeDelayStats(std::vector<double> delaysMs)
{
    DelayStats s;
    s.count = delaysMs.size();
    if (delaysMs.empty())
    {
        return s;
    }
    std::sort(delaysMs.begin(), delaysMs.end());
    s.meanMs = std::accumulate(delaysMs.begin(), delaysMs.end(), 0.0) /
               static_cast<double>(delaysMs.size());
    s.p25Ms = Percentile(delaysMs, 0.25);
    s.p50Ms = Percentile(delaysMs, 0.50);
    s.p75Ms = Percentile(delaysMs, 0.75);
    s.p95Ms = Percentile(delaysMs, 0.95);
    return s;
}

Summary
Summarize(const RunConfig& cfg, const EpisodeResult& r)
{
    const auto& modes = cfg.app.modes;
    const std::size_t n = cfg.scenario.numUes;
    Summary s;
    s.windows = r.windows.size();

    std::vector<std::size_t> modeCount(modes.Size(), 0);
    std::vector<double> prrSum(n, 0.0);
    std::vector<std::size_t> prrCount(n, 0);
    double rewardSum = 0.0;
    double prrTotal = 0.0;
    std::size_t delayViolations = 0;
    std::size_t qosViolations = 0;
    for (const auto& rec : r.windows)
    {
        const auto& w = rec.window;
        ++modeCount.at(w.mode);
        prrSum.at(w.ue) += w.prr;
        ++prrCount.at(w.ue);
        prrTotal += w.prr;
        rewardSum += rec.reward;
        const bool late = (w.delayDefined && w.meanBurstDelay >= cfg.reward.maxDelay) ||
                          (w.burstsSent > 0 && w.burstsReceived == 0);
        delayViolations += late ? 1 : 0;
        const bool gate = (w.delayDefined && w.meanBurstDelay >= cfg.reward.maxDelay) ||
                          w.prr < cfg.reward.minPrr;
        qosViolations += gate ? 1 : 0;
    }

    s.modeFraction.assign(modes.Size(), 0.0);
    if (s.windows > 0)
    {
        const double total = static_cast<double>(s.windows);
        for (std::size_t m = 0; m < modes.Size(); ++m)
        {
            s.modeFraction[m] = static_cast<double>(modeCount[m]) / total;
            if (modeCount[m] > 0)
            {
                s.meanQoe += s.modeFraction[m] * QoeOf(cfg.reward, modes.At(m).chamferDistance);
            }
        }
        s.meanReward = rewardSum / total;
        s.prrPooled = prrTotal / total;
        s.delayViolationFraction = static_cast<double>(delayViolations) / total;
        s.qosViolationFraction = static_cast<double>(qosViolations) / total;
    }
    for (std::size_t ue = 0; ue < n; ++ue)
    {
        s.prrPerUe.push_back(prrCount[ue] ? prrSum[ue] / static_cast<double>(prrCount[ue]) : 1.0);
    }

    std::vector<double> pooled;
    std::vector<std::vector<double>> perUe(n);
    for (const auto& b : r.bursts)
    {
        const double ms = b.Delay().GetMillis();
        pooled.push_back(ms);
        perUe.at(b.ue).push_back(ms);
    }
    s.delay = ComputeDelayStats(std::move(pooled));
    for (auto& v : perUe)
    {
        s.delayPerUe.push_back(ComputeDelayStats(std::move(v)));
    }
    for (const auto& u : r.ues)
    {
        s.burstsGenerated += u.burstsGenerated;
        s.burstsCompleted += u.burstsCompleted;
    }
    s.notifications = r.notifications.size();
    return s;
}

namespace {

nlohmann::json
DelayJson(const DelayStats& d)
{
    return {{"count", d.count},
            {"mean_ms", d.meanMs},
            {"p25_ms", d.p25Ms},
            {"p50_ms", d.p50Ms},
            {"p75_ms", d.p75Ms},
            {"p95_ms", d.p95Ms}};
}

} // namespace

nlohmann::json
ToJson(const Summary& s, const ModeTable& modes)
{
    nlohmann::json fractions = nlohmann::json::object();
    for (std::size_t m = 0; m < modes.Size(); ++m)
    {
        fractions[modes.At(m).name] = s.modeFraction.at(m);
    }
    nlohmann::json perUe = nlohmann::json::array();
    for (std::size_t ue = 0; ue < s.prrPerUe.size(); ++ue)
    {
        perUe.push_back({{"ue", ue}, {"prr", s.prrPerUe[ue]}, {"delay", DelayJson(s.delayPerUe[ue])}});
    }
    return {{"windows", s.windows},
            {"mean_qoe", s.meanQoe},
            {"mean_reward", s.meanReward},
            {"mode_fraction", fractions},
            {"delay", DelayJson(s.delay)},
            {"prr_pooled", s.prrPooled},
            {"per_ue", perUe},
            {"delay_violation_fraction", s.delayViolationFraction},
            {"qos_violation_fraction", s.qosViolationFraction},
            {"bursts_generated", s.burstsGenerated},
            {"bursts_completed", s.burstsCompleted},
            {"notifications", s.notifications}};
}

} // namespace ranai
