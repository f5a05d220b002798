#include "ranai/app/stats_calculator.hpp"

#include <algorithm>

namespace ranai {

AppStatsCalculator::AppStatsCalculator(UeIndex ue, SimTime start)
    : m_ue(ue),
      m_start(start)
{
}

void
AppStatsCalculator::OnBurstSent(const Burst& burst)
{
    ++m_sent;
    ++m_totalSent;
    m_lastMode = burst.mode;
}

void
AppStatsCalculator::OnFragmentReceived(std::uint32_t bytes)
{
    m_bytes += bytes;
    m_totalBytes += bytes;
}

void
AppStatsCalculator::OnBurstReceived(const CompletedBurst& burst)
{
    ++m_received;
    ++m_totalReceived;
    m_delaySum += burst.Delay().GetSeconds();
}

AppStatsWindow
AppStatsCalculator::CloseWindow(SimTime t, ModeIndex currentMode)
{
    AppStatsWindow w;
    w.ue = m_ue;
    w.windowStart = m_start;
    w.windowEnd = t;
    w.burstsSent = m_sent;
    w.burstsReceived = m_received;
    w.bytesReceived = m_bytes;
    w.delayDefined = m_received > 0;
    w.meanBurstDelay = w.delayDefined ? m_delaySum / static_cast<double>(m_received) : 0.0;
    w.prr = m_sent == 0 ? 1.0
                        : std::min(1.0, static_cast<double>(m_received) / static_cast<double>(m_sent));
    w.mode = m_lastMode.value_or(currentMode);

    m_start = t;
    m_sent = 0;
    m_received = 0;
    m_bytes = 0;
    m_delaySum = 0.0;
    m_lastMode.reset();
    return w;
}

} // namespace ranai
