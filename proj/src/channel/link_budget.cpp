#include "ranai/channel/link_budget.hpp"

#include <cmath>
#include <stdexcept>

namespace ranai {

void
LinkBudgetConfig::Validate() const
{
    if (!(bandwidthHz > 0.0) || !std::isfinite(bandwidthHz))
    {
        throw std::invalid_argument("bandwidth must be positive");
    }
    if (!std::isfinite(txPowerDbm))
    {
        throw std::invalid_argument("transmit power must be finite");
    }
    if (!std::isfinite(noiseFigureDb))
    {
        throw std::invalid_argument("noise figure must be finite");
    }
}

double
RxPowerDbm(const LinkBudgetConfig& cfg, double lossDb)
{
    return cfg.txPowerDbm - lossDb;
}

double
NoiseFloorDbm(const LinkBudgetConfig& cfg)
{
    return -174.0 + 10.0 * std::log10(cfg.bandwidthHz) + cfg.noiseFigureDb;
}

double
SnrDb(const LinkBudgetConfig& cfg, double rxDbm)
{
    return rxDbm - NoiseFloorDbm(cfg);
}

} // namespace ranai
