#include "ranai/ran/ran_cell.hpp"

#include "ranai/channel/link_budget.hpp"
#include "ranai/util/csv.hpp"

#include <ostream>
#include <stdexcept>

namespace ranai {

void
RanConfig::Validate() const
{
    tti.Validate();
    uplinkBudget.Validate();
    downlinkBudget.Validate();
    if (uplinkBufferBytes == 0 || downlinkBufferBytes == 0)
    {
        throw std::invalid_argument("buffer capacities must be positive");
    }
    if (!(notificationLossProb >= 0.0 && notificationLossProb <= 1.0))
    {
        throw std::invalid_argument("notification loss probability must lie in [0, 1]");
    }
    if (notificationExpiry <= SimTime())
    {
        throw std::invalid_argument("notification expiry must be positive");
    }
}

RanCell::RanCell(RanConfig cfg, std::size_t numUes, RngStream lossRng)
    : m_cfg(std::move(cfg)),
      m_uplink(numUes, UeLinkState(m_cfg.uplinkBufferBytes)),
      m_downlink(numUes, UeLinkState(m_cfg.downlinkBufferBytes)),
      m_lossRng(std::move(lossRng))
{
    m_cfg.Validate();
}

void
RanCell::SetTtiLog(std::ostream* out)
{
    m_ttiLog = out;
    if (m_ttiLog)
    {
        *m_ttiLog << "t,ue,share,snr_dB,buffer_bytes,served_bytes\n";
    }
}

void
RanCell::Install(Simulator& sim, SimTime stop)
{
    ScheduleTti(sim, sim.Now(), stop);
}

void
RanCell::ScheduleTti(Simulator& sim, SimTime at, SimTime stop)
{
    if (at >= stop)
    {
        return;
    }
    sim.Schedule(at, [this, &sim, at, stop] {
        ServeTti(at);
        ScheduleTti(sim, at + m_cfg.tti.tti, stop);
    });
}

EnqueueResult
RanCell::EnqueueUplink(const Packet& pkt)
{
    return m_uplink.at(pkt.ue).Enqueue(pkt);
}

EnqueueResult
RanCell::SendDownlink(const Packet& pkt, SimTime now)
{
    auto res = m_downlink.at(pkt.ue).Enqueue(pkt);
    if (!res.accepted && m_downlinkLoss)
    {
        m_downlinkLoss(pkt, now, LossReason::Overflow);
    }
    return res;
}

void
RanCell::ExpireNotifications(SimTime now)
{
    const SimTime expiry = m_cfg.notificationExpiry;
    for (auto& link : m_downlink)
    {
        if (!link.Backlogged())
        {
            continue;
        }
        auto expired = link.RemoveIf([&](const Packet& p) {
            return p.kind == PacketKind::RanAiNotification && p.createdAt + expiry <= now;
        });
        for (const auto& p : expired)
        {
            if (m_downlinkLoss)
            {
                m_downlinkLoss(p, now, LossReason::Expired);
            }
        }
    }
}

void
RanCell::ServeTti(SimTime t)
{
    if (m_lossProvider)
    {
        for (UeIndex ue = 0; ue < m_uplink.size(); ++ue)
        {
            m_uplink[ue].snrDb =
                SnrDb(m_cfg.uplinkBudget,
                      RxPowerDbm(m_cfg.uplinkBudget, m_lossProvider(ue, Direction::Uplink, t)));
            m_downlink[ue].snrDb = SnrDb(
                m_cfg.downlinkBudget,
                RxPowerDbm(m_cfg.downlinkBudget, m_lossProvider(ue, Direction::Downlink, t)));
        }
    }

    ExpireNotifications(t);

    std::vector<std::uint64_t> servedBefore;
    if (m_ttiLog)
    {
        for (const auto& l : m_uplink)
        {
            servedBefore.push_back(l.DeliveredBytes());
        }
    }

    const auto up = ranai::ServeTti(m_uplink, m_cfg.tti, m_cfg.uplinkBudget, t);
    const auto down = ranai::ServeTti(m_downlink, m_cfg.tti, m_cfg.downlinkBudget, t);

    if (m_ttiLog)
    {
        for (UeIndex ue = 0; ue < m_uplink.size(); ++ue)
        {
            const auto& l = m_uplink[ue];
            *m_ttiLog << FormatDouble(t.GetSeconds()) << ',' << ue << ',' << FormatDouble(l.share)
                      << ',' << FormatDouble(l.snrDb) << ',' << l.BufferBytes() << ','
                      << (l.DeliveredBytes() - servedBefore[ue]) << '\n';
        }
    }

    for (const auto& d : up)
    {
        if (m_uplinkRx)
        {
            m_uplinkRx(d.packet, d.deliveredAt);
        }
    }
    for (const auto& d : down)
    {
        if (d.packet.kind == PacketKind::RanAiNotification &&
            m_lossRng.Bernoulli(m_cfg.notificationLossProb))
        {
            if (m_downlinkLoss)
            {
                m_downlinkLoss(d.packet, d.deliveredAt, LossReason::Corrupted);
            }
            continue;
        }
        if (m_downlinkRx)
        {
            m_downlinkRx(d.packet, d.deliveredAt);
        }
    }
}

} // namespace ranai
