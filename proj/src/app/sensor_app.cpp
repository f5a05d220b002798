#include "ranai/app/sensor_app.hpp"

#include <stdexcept>

namespace ranai {

SensorApp::SensorApp(UeIndex ue,
                     SensorAppConfig cfg,
                     std::shared_ptr<const FrameSizer> sizer,
                     RngStream rng,
                     ModeIndex initialMode,
                     Sender sender)
    : m_ue(ue),
      m_cfg(cfg),
      m_sizer(std::move(sizer)),
      m_rng(std::move(rng)),
      m_mode(initialMode),
      m_sender(std::move(sender))
{
    if (m_cfg.framePeriod <= SimTime())
    {
        throw std::invalid_argument("frame period must be positive");
    }
    if (m_cfg.mtuPayload == 0)
    {
        throw std::invalid_argument("MTU payload must be positive");
    }
    if (initialMode >= m_sizer->Modes().Size())
    {
        throw std::invalid_argument("initial mode out of range");
    }
}

void
SensorApp::Install(Simulator& sim, SimTime stop)
{
    ScheduleNext(sim, sim.Now(), stop);
}

void
SensorApp::ScheduleNext(Simulator& sim, SimTime at, SimTime stop)
{
    if (at >= stop)
    {
        return;
    }
    sim.Schedule(at, [this, &sim, at, stop] {
        if (GenerateFrame(at))
        {
            ScheduleNext(sim, at + m_cfg.framePeriod, stop);
        }
    });
}

std::optional<Burst>
SensorApp::GenerateFrame(SimTime t)
{
    if (m_halted)
    {
        return std::nullopt;
    }
    const auto size = m_sizer->Size(m_frameCounter, m_mode, m_rng);
    if (!size)
    {
        m_halted = true;
        return std::nullopt;
    }
    Burst b;
    b.burstId = m_frameCounter++;
    b.ue = m_ue;
    b.mode = m_mode;
    b.totalBytes = *size;
    b.generatedAt = t;
    b.fragmentCount = FragmentCount(b.totalBytes, m_cfg.mtuPayload);
    for (const auto& p : MakeFragments(b, m_cfg.mtuPayload, m_nextPacketId))
    {
        if (!m_sender(p).accepted)
        {
            ++b.fragmentsDropped;
        }
    }
    m_lastFrameBytes = b.totalBytes;
    if (m_onBurst)
    {
        m_onBurst(b);
    }
    return b;
}

void
SensorApp::SetMode(ModeIndex mode, SimTime t)
{
    if (mode >= m_sizer->Modes().Size())
    {
        throw std::invalid_argument("SetMode: mode out of range");
    }
    if (mode == m_mode)
    {
        return;
    }
    m_changes.push_back({t, m_mode, mode});
    m_mode = mode;
}

CbrSource::CbrSource(UeIndex ue, std::uint32_t packetBytes, SimTime interval, Sender sender)
    : m_ue(ue),
      m_packetBytes(packetBytes),
      m_interval(interval),
      m_sender(std::move(sender))
{
    if (packetBytes == 0 || interval <= SimTime())
    {
        throw std::invalid_argument("CBR source needs positive packet size and interval");
    }
}

double
CbrSource::RateBps() const
{
    return static_cast<double>(m_packetBytes) * 8.0 / m_interval.GetSeconds();
}

void
CbrSource::Install(Simulator& sim, SimTime stop)
{
    ScheduleNext(sim, sim.Now(), stop);
}

void
CbrSource::ScheduleNext(Simulator& sim, SimTime at, SimTime stop)
{
    if (at >= stop)
    {
        return;
    }
    sim.Schedule(at, [this, &sim, at, stop] {
        Packet p;
        p.id = m_sent++;
        p.ue = m_ue;
        p.direction = Direction::Downlink;
        p.kind = PacketKind::DownlinkCommand;
        p.sizeBytes = m_packetBytes;
        p.createdAt = at;
        m_sender(p);
        ScheduleNext(sim, at + m_interval, stop);
    });
}

} // namespace ranai
