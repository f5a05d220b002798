#pragma once

#include "ranai/app/burst.hpp"
#include "ranai/app/frame_source.hpp"
#include "ranai/app/stats_calculator.hpp"
#include "ranai/ran/link.hpp"
#include "ranai/sim/simulator.hpp"

#include <functional>
#include <memory>

namespace ranai {

struct SensorAppConfig
{
    SimTime framePeriod = SimTime::Millis(100);
    std::uint32_t mtuPayload = 1460;
};

struct ModeChange
{
    SimTime at;
    ModeIndex from = 0;
    ModeIndex to = 0;
};

/// Periodic LiDAR frame generator. Each frame becomes a burst whose
/// fragments are handed to the uplink in index order. Mode changes apply
/// from the next generated frame.
class SensorApp
{
  public:
    using Sender = std::function<EnqueueResult(const Packet&)>;
    using BurstCallback = std::function<void(const Burst&)>;

    SensorApp(UeIndex ue,
              SensorAppConfig cfg,
              std::shared_ptr<const FrameSizer> sizer,
              RngStream rng,
              ModeIndex initialMode,
              Sender sender);

    void SetBurstCallback(BurstCallback cb) { m_onBurst = std::move(cb); }

    /// First frame at the current time, then every frame period while
    /// t < stop.
    void Install(Simulator& sim, SimTime stop);

    /// Builds and sends one frame. Returns nullopt once a stop-at-end trace
    /// is exhausted; the app is halted from then on.
    std::optional<Burst> GenerateFrame(SimTime t);

    /// Idempotent; a change is recorded only when the mode differs.
    void SetMode(ModeIndex mode, SimTime t);

    UeIndex Ue() const { return m_ue; }
    ModeIndex CurrentMode() const { return m_mode; }
    std::uint64_t LastFrameBytes() const { return m_lastFrameBytes; }
    std::uint64_t FramesGenerated() const { return m_frameCounter; }
    bool Halted() const { return m_halted; }
    const std::vector<ModeChange>& ModeChanges() const { return m_changes; }
    const FrameSizer& Sizer() const { return *m_sizer; }

  private:
    void ScheduleNext(Simulator& sim, SimTime at, SimTime stop);

    UeIndex m_ue;
    SensorAppConfig m_cfg;
    std::shared_ptr<const FrameSizer> m_sizer;
    RngStream m_rng;
    ModeIndex m_mode;
    Sender m_sender;
    BurstCallback m_onBurst;
    std::uint64_t m_frameCounter = 0;
    std::uint64_t m_nextPacketId = 0;
    std::uint64_t m_lastFrameBytes = 0;
    bool m_halted = false;
    std::vector<ModeChange> m_changes;
};

/// Constant-bit-rate downlink flow (teleoperation commands).
class CbrSource
{
  public:
    using Sender = std::function<void(const Packet&)>;

    CbrSource(UeIndex ue, std::uint32_t packetBytes, SimTime interval, Sender sender);

    /// First packet at the current time, then every interval while t < stop.
    void Install(Simulator& sim, SimTime stop);

    std::uint64_t PacketsSent() const { return m_sent; }
    std::uint64_t BytesSent() const { return m_sent * m_packetBytes; }
    double RateBps() const;

  private:
    void ScheduleNext(Simulator& sim, SimTime at, SimTime stop);

    UeIndex m_ue;
    std::uint32_t m_packetBytes;
    SimTime m_interval;
    Sender m_sender;
    std::uint64_t m_sent = 0;
};

} // namespace ranai
