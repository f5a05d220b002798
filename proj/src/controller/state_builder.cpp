#include "ranai/controller/state_builder.hpp"

#include <algorithm>
#include <cmath>

namespace ranai {

StateVector
BuildStateVector(const KpiWindow& k, const StateScales& scales)
{
    StateVector s(kStateFeatures, 0.0);
    const auto& w = k.app;

    if (w.delayDefined)
    {
        s[0] = std::clamp(w.meanBurstDelay / scales.maxDelay, 0.0, 2.0);
    }
    else if (w.burstsSent > 0)
    {
        s[0] = 2.0;
    }
    s[1] = std::clamp(w.prr, 0.0, 1.0);

    const double seconds = (w.windowEnd - w.windowStart).GetSeconds();
    if (seconds > 0.0)
    {
        s[2] = static_cast<double>(w.bytesReceived) * 8.0 / seconds / 1e6 / 100.0;
    }
    s[3] = std::isfinite(k.meanSnrDb) ? std::clamp(k.meanSnrDb / 30.0, -1.0, 2.0) : -1.0;
    s[4] = std::clamp(k.bufferFraction, 0.0, 1.0);
    s[5] = std::clamp(k.meanShare, 0.0, 1.0);
    s[6] = scales.numModes > 1
               ? static_cast<double>(k.currentMode) / static_cast<double>(scales.numModes - 1)
               : 0.0;
    if (scales.maxFrameBytes > 0.0)
    {
        s[7] = std::clamp(static_cast<double>(k.lastFrameBytes) / scales.maxFrameBytes, 0.0, 1.0);
    }
    return s;
}

} // namespace ranai
