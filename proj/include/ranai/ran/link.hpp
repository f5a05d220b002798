#pragma once

#include "ranai/channel/link_budget.hpp"
#include "ranai/ran/packet.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

namespace ranai {

struct TtiConfig
{
    SimTime tti = SimTime::Millis(1);
    double macEfficiency = 0.8;
    double seMax = 7.8;       // bit/s/Hz
    double snrOutageDb = -5.0;

    void Validate() const;
};

/// Truncated-Shannon rate: 0 in outage, otherwise
/// eta * share * B * min(log2(1 + snr), seMax).
double LinkRateBps(const TtiConfig& cfg,
                   const LinkBudgetConfig& budget,
                   double snrDb,
                   double share);

struct EnqueueResult
{
    bool accepted = false;
};

/// Per-UE, per-direction transmission buffer plus the MAC-level observables
/// of the current KPI window. Byte accounting satisfies
/// offered == delivered + dropped + buffered at every instant, where
/// "delivered" counts bytes already sent over the air.
class UeLinkState
{
  public:
    explicit UeLinkState(std::uint64_t capacityBytes);

    /// Tail-drops when the packet does not fit.
    EnqueueResult Enqueue(const Packet& pkt);

    /// Drains up to `bytes` FIFO. Returns packets whose last byte left the
    /// buffer. Partially sent packets stay at the head.
    std::vector<Packet> Drain(std::uint64_t bytes);

    /// Removes queued packets matching the predicate (a partially sent head
    /// packet included). Remaining unsent bytes count as dropped.
    std::vector<Packet> RemoveIf(const std::function<bool(const Packet&)>& pred);

    bool Backlogged() const { return m_bufferBytes > 0; }
    std::uint64_t BufferBytes() const { return m_bufferBytes; }
    std::uint64_t CapacityBytes() const { return m_capacityBytes; }
    std::size_t QueuedPackets() const { return m_queue.size(); }

    std::uint64_t OfferedBytes() const { return m_offeredBytes; }
    std::uint64_t DeliveredBytes() const { return m_deliveredBytes; }
    std::uint64_t DroppedBytes() const { return m_droppedBytes; }
    std::uint64_t DroppedPackets() const { return m_droppedPackets; }

    // Latest SNR and the share granted in the last TTI.
    double snrDb = 0.0;
    double share = 0.0;
    // Window accumulators, reset by the controller at each KPI window.
    std::uint64_t servedBytesWindow = 0;
    double snrSumWindow = 0.0;
    double shareSumWindow = 0.0;
    std::uint64_t ttiCountWindow = 0;

  private:
    std::deque<Packet> m_queue;
    std::uint64_t m_headSent = 0; // bytes of the head packet already sent
    std::uint64_t m_capacityBytes;
    std::uint64_t m_bufferBytes = 0;
    std::uint64_t m_offeredBytes = 0;
    std::uint64_t m_deliveredBytes = 0;
    std::uint64_t m_droppedBytes = 0;
    std::uint64_t m_droppedPackets = 0;
};

struct Delivery
{
    Packet packet;
    SimTime deliveredAt;
};

/// One TTI of equal-share round robin over `links` starting at t: every
/// backlogged UE gets share 1/|backlogged|, drains floor(rate * tti / 8)
/// bytes, and each completed packet is stamped with the TTI end.
std::vector<Delivery> ServeTti(std::vector<UeLinkState>& links,
                               const TtiConfig& cfg,
                               const LinkBudgetConfig& budget,
                               SimTime t);

} // namespace ranai
