#pragma once

#include "ranai/app/app_mode.hpp"
#include "ranai/ran/packet.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ranai {

/// One sensor frame, sent as a burst of MTU-sized fragments.
struct Burst
{
    std::uint64_t burstId = 0;
    UeIndex ue = 0;
    ModeIndex mode = 0;
    std::uint64_t totalBytes = 0;
    SimTime generatedAt;
    std::uint32_t fragmentCount = 0;
    std::uint32_t fragmentsDropped = 0; // tail drops at the sender's buffer
};

struct CompletedBurst
{
    std::uint64_t burstId = 0;
    UeIndex ue = 0;
    ModeIndex mode = 0;
    std::uint64_t totalBytes = 0;
    SimTime generatedAt;
    SimTime completedAt;

    SimTime Delay() const { return completedAt - generatedAt; }
};

/// ceil(totalBytes / mtuPayload).
std::uint32_t FragmentCount(std::uint64_t totalBytes, std::uint32_t mtuPayload);

/// Splits a burst into fragments in index order; all but the last carry
/// mtuPayload bytes. Packet ids are taken from nextPacketId.
std::vector<Packet> MakeFragments(const Burst& burst, std::uint32_t mtuPayload, std::uint64_t& nextPacketId);

/// Receiver-side reassembly. A burst completes when its last missing
/// fragment arrives; a burst with a lost fragment never completes.
class BurstSink
{
  public:
    std::optional<CompletedBurst> OnFragmentDelivered(const Packet& pkt, SimTime t);

    std::uint64_t Duplicates() const { return m_duplicates; }
    std::size_t IncompleteBursts() const { return m_partial.size(); }
    std::uint64_t CompletedCount() const { return m_completed.size(); }

  private:
    struct Partial
    {
        std::vector<bool> seen;
        std::uint32_t received = 0;
    };

    std::unordered_map<std::uint64_t, Partial> m_partial;
    std::unordered_set<std::uint64_t> m_completed;
    std::uint64_t m_duplicates = 0;
};

} // namespace ranai
