#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ranai {

using ModeIndex = std::uint32_t;

/// One (compression, segmentation) configuration of the LiDAR stream.
struct AppMode
{
    std::string name;
    double meanFrameBytes = 0.0;
    double chamferDistance = 0.0; // CD_sym of frames sent in this mode
};

/// Ordered mode set. Its order is the agent's action index.
class ModeTable
{
  public:
    ModeTable() = default;
    explicit ModeTable(std::vector<AppMode> modes);

    /// C-R / C-SC / C-SA with surrogate frame sizes and Chamfer distances
    /// that reproduce QoE 1 / 0.88 / 0.22 at CD_max = 45.
    static ModeTable Default();

    std::size_t Size() const { return m_modes.size(); }
    const AppMode& At(ModeIndex i) const { return m_modes.at(i); }
    const std::vector<AppMode>& Modes() const { return m_modes; }
    std::optional<ModeIndex> Find(const std::string& name) const;
    /// Throws std::invalid_argument for an unknown name.
    ModeIndex IndexOf(const std::string& name) const;

  private:
    std::vector<AppMode> m_modes;
};

} // namespace ranai
