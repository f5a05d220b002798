#include "ranai/controller/notification.hpp"

#include <stdexcept>
#include <string>

namespace ranai {

namespace {

void
PutU32(std::array<std::byte, 12>& out, std::size_t offset, std::uint32_t v)
{
    for (std::size_t i = 0; i < 4; ++i)
    {
        out[offset + i] = static_cast<std::byte>((v >> (8 * i)) & 0xffu);
    }
}

std::uint32_t
GetU32(const std::array<std::byte, 12>& in, std::size_t offset)
{
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i)
    {
        v |= static_cast<std::uint32_t>(in[offset + i]) << (8 * i);
    }
    return v;
}

} // namespace

std::string_view
ToString(NotificationMechanism m)
{
    return m == NotificationMechanism::Ideal ? "ideal" : "real";
}

NotificationMechanism
ParseMechanism(std::string_view s)
{
    if (s == "ideal")
    {
        return NotificationMechanism::Ideal;
    }
    if (s == "real")
    {
        return NotificationMechanism::Real;
    }
    throw std::invalid_argument("unknown notification mechanism '" + std::string(s) + "'");
}

std::array<std::byte, 12>
EncodeNotification(const Notification& n)
{
    std::array<std::byte, 12> out{};
    PutU32(out, 0, n.action);
    PutU32(out, 4, n.imsi);
    PutU32(out, 8, n.rnti);
    return out;
}

Notification
DecodeNotification(const std::array<std::byte, 12>& payload)
{
    Notification n;
    n.action = GetU32(payload, 0);
    n.imsi = GetU32(payload, 4);
    n.rnti = GetU32(payload, 8);
    n.mechanism = NotificationMechanism::Real;
    return n;
}

} // namespace ranai
