#pragma once

namespace ranai {

struct LinkBudgetConfig
{
    double txPowerDbm = 23.0;
    double bandwidthHz = 50e6;
    double noiseFigureDb = 5.0;
    double carrierFrequencyHz = 3.5e9; // informational only

    /// Throws std::invalid_argument on a non-positive bandwidth or non-finite
    /// power.
    void Validate() const;
};

double RxPowerDbm(const LinkBudgetConfig& cfg, double lossDb);

/// Thermal noise floor -174 dBm/Hz + 10 log10(B) + NF.
double NoiseFloorDbm(const LinkBudgetConfig& cfg);

double SnrDb(const LinkBudgetConfig& cfg, double rxDbm);

} // namespace ranai
