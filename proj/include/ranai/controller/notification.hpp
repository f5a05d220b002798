#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/ran/packet.hpp"

#include <string_view>

namespace ranai {

enum class NotificationMechanism : std::uint8_t
{
    Ideal,
    Real,
};

std::string_view ToString(NotificationMechanism m);
/// Accepts "ideal" and "real"; throws std::invalid_argument otherwise.
NotificationMechanism ParseMechanism(std::string_view s);

struct Notification
{
    ActionIndex action = 0;
    std::uint32_t imsi = 0;
    std::uint32_t rnti = 0;
    SimTime issuedAt;
    NotificationMechanism mechanism = NotificationMechanism::Ideal;
};

inline constexpr std::uint32_t kNotificationBytes = 12;

/// action, IMSI and RNTI as little-endian u32, in that order.
std::array<std::byte, 12> EncodeNotification(const Notification& n);
Notification DecodeNotification(const std::array<std::byte, 12>& payload);

/// Identifiers of a UE index in the cell.
inline std::uint32_t ImsiOf(UeIndex ue) { return 1000 + ue; }
inline std::uint32_t RntiOf(UeIndex ue) { return ue + 1; }

} // namespace ranai
