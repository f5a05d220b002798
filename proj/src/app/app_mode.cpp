#include "ranai/app/app_mode.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ranai {

ModeTable::ModeTable(std::vector<AppMode> modes)
    : m_modes(std::move(modes))
{
    if (m_modes.empty())
    {
        throw std::invalid_argument("mode table is empty");
    }
    std::set<std::string> names;
    for (const auto& m : m_modes)
    {
        if (m.name.empty() || !names.insert(m.name).second)
        {
            throw std::invalid_argument("mode names must be unique and non-empty");
        }
        if (!(m.meanFrameBytes > 0.0) || !std::isfinite(m.meanFrameBytes))
        {
            throw std::invalid_argument("mode " + m.name + ": frame size must be positive");
        }
        if (!(m.chamferDistance >= 0.0) || !std::isfinite(m.chamferDistance))
        {
            throw std::invalid_argument("mode " + m.name + ": Chamfer distance must be >= 0");
        }
    }
}

ModeTable
ModeTable::Default()
{
    return ModeTable({
        {"C-R", 1.9e6, 0.0},
        {"C-SC", 0.6e6, 5.4},
        {"C-SA", 0.12e6, 35.1},
    });
}

std::optional<ModeIndex>
ModeTable::Find(const std::string& name) const
{
    for (std::size_t i = 0; i < m_modes.size(); ++i)
    {
        if (m_modes[i].name == name)
        {
            return static_cast<ModeIndex>(i);
        }
    }
    return std::nullopt;
}

ModeIndex
ModeTable::IndexOf(const std::string& name) const
{
    auto idx = Find(name);
    if (!idx)
    {
        throw std::invalid_argument("unknown application mode '" + name + "'");
    }
    return *idx;
}

} // namespace ranai
