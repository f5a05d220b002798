#include "ranai/app/burst.hpp"

#include <algorithm>
#include <stdexcept>

namespace ranai {

std::uint32_t
FragmentCount(std::uint64_t totalBytes, std::uint32_t mtuPayload)
{
    if (mtuPayload == 0)
    {
        throw std::invalid_argument("MTU payload must be positive");
    }
    return static_cast<std::uint32_t>((totalBytes + mtuPayload - 1) / mtuPayload);
}

std::vector<Packet>
MakeFragments(const Burst& burst, std::uint32_t mtuPayload, std::uint64_t& nextPacketId)
{
    const std::uint32_t n = FragmentCount(burst.totalBytes, mtuPayload);
    std::vector<Packet> out;
    out.reserve(n);
    std::uint64_t left = burst.totalBytes;
    for (std::uint32_t i = 0; i < n; ++i)
    {
        Packet p;
        p.id = nextPacketId++;
        p.ue = burst.ue;
        p.direction = Direction::Uplink;
        p.kind = PacketKind::AppFragment;
        p.sizeBytes = static_cast<std::uint32_t>(std::min<std::uint64_t>(left, mtuPayload));
        p.createdAt = burst.generatedAt;
        p.fragment = {burst.burstId, i, n, burst.totalBytes, burst.mode};
        left -= p.sizeBytes;
        out.push_back(p);
    }
    return out;
}

std::optional<CompletedBurst>
BurstSink::OnFragmentDelivered(const Packet& pkt, SimTime t)
{
    if (pkt.kind != PacketKind::AppFragment)
    {
        throw std::invalid_argument("BurstSink: not an application fragment");
    }
    const auto& h = pkt.fragment;
    if (h.fragmentIndex >= h.fragmentCount)
    {
        throw std::invalid_argument("BurstSink: fragment index out of range");
    }
    if (m_completed.count(h.burstId))
    {
        ++m_duplicates;
        return std::nullopt;
    }
    auto& part = m_partial[h.burstId];
    if (part.seen.empty())
    {
        part.seen.assign(h.fragmentCount, false);
    }
    if (part.seen[h.fragmentIndex])
    {
        ++m_duplicates;
        return std::nullopt;
    }
    part.seen[h.fragmentIndex] = true;
    if (++part.received < h.fragmentCount)
    {
        return std::nullopt;
    }
    m_partial.erase(h.burstId);
    m_completed.insert(h.burstId);
    return CompletedBurst{h.burstId, pkt.ue, h.modeIndex, h.burstBytes, pkt.createdAt, t};
}

} // namespace ranai
