#pragma once

#include "ranai/sim/sim_time.hpp"

#include <array>
#include <cstddef>
#include <cstdint>

namespace ranai {

using UeIndex = std::uint32_t;

enum class Direction : std::uint8_t
{
    Uplink,
    Downlink,
};

enum class PacketKind : std::uint8_t
{
    AppFragment,
    DownlinkCommand,
    RanAiNotification,
};

/// Fragment header carried by application packets so the sink can
/// reassemble without out-of-band state.
struct FragmentHeader
{
    std::uint64_t burstId = 0;
    std::uint32_t fragmentIndex = 0;
    std::uint32_t fragmentCount = 0;
    std::uint64_t burstBytes = 0;
    std::uint32_t modeIndex = 0;
};

struct Packet
{
    std::uint64_t id = 0;
    UeIndex ue = 0;
    Direction direction = Direction::Uplink;
    PacketKind kind = PacketKind::AppFragment;
    std::uint32_t sizeBytes = 0;
    SimTime createdAt;
    FragmentHeader fragment;                // AppFragment only
    std::array<std::byte, 12> payload{};   // RanAiNotification only
};

} // namespace ranai
