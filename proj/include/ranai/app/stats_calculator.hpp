#pragma once

#include "ranai/app/burst.hpp"

namespace ranai {

/// Application KPIs of one UE over one window.
struct AppStatsWindow
{
    UeIndex ue = 0;
    SimTime windowStart;
    SimTime windowEnd;
    std::uint64_t burstsSent = 0;
    std::uint64_t burstsReceived = 0;
    std::uint64_t bytesReceived = 0;
    double meanBurstDelay = 0.0; // seconds; 0 when no burst completed
    bool delayDefined = false;
    double prr = 1.0;
    /// Mode of the last frame generated in the window, or the app's mode at
    /// close when none was generated.
    ModeIndex mode = 0;
};

/// Windowed burst statistics: bursts count as sent in the window of their
/// generation and as received in the window of their completion.
class AppStatsCalculator
{
  public:
    AppStatsCalculator(UeIndex ue, SimTime start);

    void OnBurstSent(const Burst& burst);
    void OnFragmentReceived(std::uint32_t bytes);
    void OnBurstReceived(const CompletedBurst& burst);

    /// Returns the window [start, t] and opens the next one at t. PRR is
    /// received / sent clipped to 1, and 1 when nothing was sent.
    AppStatsWindow CloseWindow(SimTime t, ModeIndex currentMode);

    std::uint64_t TotalSent() const { return m_totalSent; }
    std::uint64_t TotalReceived() const { return m_totalReceived; }
    std::uint64_t TotalBytesReceived() const { return m_totalBytes; }

  private:
    UeIndex m_ue;
    SimTime m_start;
    std::uint64_t m_sent = 0;
    std::uint64_t m_received = 0;
    std::uint64_t m_bytes = 0;
    double m_delaySum = 0.0;
    std::optional<ModeIndex> m_lastMode;
    std::uint64_t m_totalSent = 0;
    std::uint64_t m_totalReceived = 0;
    std::uint64_t m_totalBytes = 0;
};

} // namespace ranai
