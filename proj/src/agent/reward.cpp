#include "ranai/agent/reward.hpp"

#include <algorithm>
#include <stdexcept>

namespace ranai {

void
RewardConfig::Validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
    {
        throw std::invalid_argument("reward alpha must lie in [0, 1]");
    }
    if (!(maxDelay > 0.0))
    {
        throw std::invalid_argument("max tolerated delay must be positive");
    }
    if (!(maxChamfer > 0.0))
    {
        throw std::invalid_argument("max tolerated Chamfer distance must be positive");
    }
    if (!(minPrr >= 0.0 && minPrr <= 1.0))
    {
        throw std::invalid_argument("min tolerated PRR must lie in [0, 1]");
    }
}

double
QoeOf(const RewardConfig& cfg, double chamferDistance)
{
    return std::clamp((cfg.maxChamfer - chamferDistance) / cfg.maxChamfer, 0.0, 1.0);
}

double
ComputeReward(const RewardConfig& cfg, double delay, double prr, double chamferDistance)
{
    if (delay >= cfg.maxDelay || prr < cfg.minPrr)
    {
        return 0.0;
    }
    const double qos = (cfg.maxDelay - delay) / cfg.maxDelay;
    const double qoe = (cfg.maxChamfer - chamferDistance) / cfg.maxChamfer;
    return std::clamp((1.0 - cfg.alpha) * qos + cfg.alpha * qoe, 0.0, 1.0);
}

double
ComputeReward(const RewardConfig& cfg, const AppStatsWindow& window, double chamferDistance)
{
    return ComputeReward(cfg, window.delayDefined ? window.meanBurstDelay : 0.0, window.prr,
                         chamferDistance);
}

} // namespace ranai
