#pragma once

#include "ranai/ran/link.hpp"
#include "ranai/sim/rng.hpp"
#include "ranai/sim/simulator.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace ranai {

struct RanConfig
{
    TtiConfig tti;
    LinkBudgetConfig uplinkBudget;
    LinkBudgetConfig downlinkBudget;
    std::uint64_t uplinkBufferBytes = 3'000'000;
    std::uint64_t downlinkBufferBytes = 1'000'000;
    /// Probability that a transmitted notification packet is corrupted.
    double notificationLossProb = 0.0;
    /// Notifications still queued this long after creation are discarded.
    SimTime notificationExpiry = SimTime::Millis(100);

    void Validate() const;
};

enum class LossReason : std::uint8_t
{
    Overflow,
    Corrupted,
    Expired,
};

/// Single-cell abstract data plane: one uplink and one downlink queue per UE,
/// each direction scheduled independently with equal-share round robin.
class RanCell
{
  public:
    using ReceiveCallback = std::function<void(const Packet&, SimTime deliveredAt)>;
    using LossCallback = std::function<void(const Packet&, SimTime at, LossReason)>;
    /// Propagation loss in dB for a UE and direction at time t.
    using LossProvider = std::function<double(UeIndex, Direction, SimTime)>;

    RanCell(RanConfig cfg, std::size_t numUes, RngStream lossRng);

    void SetLossProvider(LossProvider provider) { m_lossProvider = std::move(provider); }
    void SetUplinkReceiveCallback(ReceiveCallback cb) { m_uplinkRx = std::move(cb); }
    void SetDownlinkReceiveCallback(ReceiveCallback cb) { m_downlinkRx = std::move(cb); }
    void SetDownlinkLossCallback(LossCallback cb) { m_downlinkLoss = std::move(cb); }
    /// Optional CSV: t,ue,share,snr_dB,buffer_bytes,served_bytes (uplink).
    void SetTtiLog(std::ostream* out);

    /// Schedules one TTI every tti from the current time while t < stop.
    void Install(Simulator& sim, SimTime stop);

    EnqueueResult EnqueueUplink(const Packet& pkt);
    /// Queues a downlink packet; the outcome arrives later through the
    /// receive or loss callback (an overflow is reported immediately).
    EnqueueResult SendDownlink(const Packet& pkt, SimTime now);

    /// Serves the TTI [t, t + tti) in both directions.
    void ServeTti(SimTime t);

    /// Drops queued notifications older than the expiry.
    void ExpireNotifications(SimTime now);

    std::size_t NumUes() const { return m_uplink.size(); }
    UeLinkState& Uplink(UeIndex ue) { return m_uplink.at(ue); }
    const UeLinkState& Uplink(UeIndex ue) const { return m_uplink.at(ue); }
    UeLinkState& Downlink(UeIndex ue) { return m_downlink.at(ue); }
    const UeLinkState& Downlink(UeIndex ue) const { return m_downlink.at(ue); }
    const RanConfig& Config() const { return m_cfg; }

  private:
    void ScheduleTti(Simulator& sim, SimTime at, SimTime stop);

    RanConfig m_cfg;
    std::vector<UeLinkState> m_uplink;
    std::vector<UeLinkState> m_downlink;
    RngStream m_lossRng;
    LossProvider m_lossProvider;
    ReceiveCallback m_uplinkRx;
    ReceiveCallback m_downlinkRx;
    LossCallback m_downlinkLoss;
    std::ostream* m_ttiLog = nullptr;
};

} // namespace ranai
