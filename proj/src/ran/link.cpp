#include "ranai/ran/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranai {

void
TtiConfig::Validate() const
{
    if (tti <= SimTime())
    {
        throw std::invalid_argument("TTI must be positive");
    }
    if (!(macEfficiency > 0.0 && macEfficiency <= 1.0))
    {
        throw std::invalid_argument("MAC efficiency must lie in (0, 1]");
    }
    if (!(seMax > 0.0))
    {
        throw std::invalid_argument("spectral efficiency cap must be positive");
    }
}

double
LinkRateBps(const TtiConfig& cfg, const LinkBudgetConfig& budget, double snrDb, double share)
{
    if (snrDb < cfg.snrOutageDb || share <= 0.0)
    {
        return 0.0;
    }
    const double se = std::min(std::log2(1.0 + std::pow(10.0, snrDb / 10.0)), cfg.seMax);
    return cfg.macEfficiency * share * budget.bandwidthHz * se;
}

UeLinkState::UeLinkState(std::uint64_t capacityBytes)
    : m_capacityBytes(capacityBytes)
{
}

EnqueueResult
UeLinkState::Enqueue(const Packet& pkt)
{
    m_offeredBytes += pkt.sizeBytes;
    if (m_bufferBytes + pkt.sizeBytes > m_capacityBytes)
    {
        m_droppedBytes += pkt.sizeBytes;
        ++m_droppedPackets;
        return {false};
    }
    m_queue.push_back(pkt);
    m_bufferBytes += pkt.sizeBytes;
    return {true};
}

std::vector<Packet>
UeLinkState::Drain(std::uint64_t bytes)
{
    std::vector<Packet> done;
    while (bytes > 0 && !m_queue.empty())
    {
        const std::uint64_t left = m_queue.front().sizeBytes - m_headSent;
        const std::uint64_t take = std::min(bytes, left);
        bytes -= take;
        m_headSent += take;
        m_bufferBytes -= take;
        m_deliveredBytes += take;
        if (m_headSent == m_queue.front().sizeBytes)
        {
            done.push_back(m_queue.front());
            m_queue.pop_front();
            m_headSent = 0;
        }
    }
    return done;
}

std::vector<Packet>
UeLinkState::RemoveIf(const std::function<bool(const Packet&)>& pred)
{
    std::vector<Packet> removed;
    std::deque<Packet> kept;
    for (std::size_t i = 0; i < m_queue.size(); ++i)
    {
        const Packet& p = m_queue[i];
        if (pred(p))
        {
            const std::uint64_t unsent = p.sizeBytes - (i == 0 ? m_headSent : 0);
            m_bufferBytes -= unsent;
            m_droppedBytes += unsent;
            ++m_droppedPackets;
            if (i == 0)
            {
                m_headSent = 0;
            }
            removed.push_back(p);
        }
        else
        {
            kept.push_back(p);
        }
    }
    m_queue = std::move(kept);
    return removed;
}

std::vector<Delivery>
ServeTti(std::vector<UeLinkState>& links,
         const TtiConfig& cfg,
         const LinkBudgetConfig& budget,
         SimTime t)
{
    std::size_t backlogged = 0;
    for (const auto& l : links)
    {
        backlogged += l.Backlogged() ? 1 : 0;
    }
    const double share = backlogged > 0 ? 1.0 / static_cast<double>(backlogged) : 0.0;
    const SimTime end = t + cfg.tti;
    const double ttiSeconds = cfg.tti.GetSeconds();

    std::vector<Delivery> out;
    for (auto& l : links)
    {
        l.share = l.Backlogged() ? share : 0.0;
        l.snrSumWindow += l.snrDb;
        l.shareSumWindow += l.share;
        ++l.ttiCountWindow;
        if (l.share == 0.0)
        {
            continue;
        }
        const double rate = LinkRateBps(cfg, budget, l.snrDb, l.share);
        const auto budgetBytes = static_cast<std::uint64_t>(std::floor(rate * ttiSeconds / 8.0));
        const std::uint64_t before = l.DeliveredBytes();
        for (auto& p : l.Drain(budgetBytes))
        {
            out.push_back({p, end});
        }
        l.servedBytesWindow += l.DeliveredBytes() - before;
    }
    return out;
}

} // namespace ranai
