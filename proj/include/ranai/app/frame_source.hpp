#pragma once

#include "ranai/app/app_mode.hpp"
#include "ranai/sim/rng.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ranai {

class FrameTraceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class LoopMode
{
    Restart,
    Stop,
};

/// Per-frame sizes for every mode of a recorded scene.
class FrameTrace
{
  public:
    /// CSV with header frameIndex,mode,sizeBytes. Frame indices must cover
    /// 0..N-1 for every mode in the table.
    static FrameTrace Parse(std::istream& in, const ModeTable& modes);

    FrameTrace() = default;
    /// sizes[frame][mode]
    explicit FrameTrace(std::vector<std::vector<std::uint64_t>> sizes);

    std::size_t FrameCount() const { return m_sizes.size(); }
    std::uint64_t Size(std::size_t frame, ModeIndex mode) const { return m_sizes.at(frame).at(mode); }
    std::uint64_t MaxSize() const;
    void Write(std::ostream& out, const ModeTable& modes) const;

  private:
    std::vector<std::vector<std::uint64_t>> m_sizes;
};

/// Frame size source: either a recorded trace or a uniform jitter around each
/// mode's mean size.
class FrameSizer
{
  public:
    FrameSizer(ModeTable modes, double jitter);
    FrameSizer(ModeTable modes, FrameTrace trace, LoopMode loop);

    /// Size of frame number `frameCounter` in `mode`; nullopt once a
    /// stop-at-end trace is exhausted. The distribution source draws exactly
    /// one variate per call whatever the mode.
    std::optional<std::uint64_t> Size(std::uint64_t frameCounter, ModeIndex mode, RngStream& rng) const;

    /// Largest frame any mode can produce.
    std::uint64_t MaxFrameBytes() const;
    const ModeTable& Modes() const { return m_modes; }

  private:
    ModeTable m_modes;
    double m_jitter = 0.0;
    std::optional<FrameTrace> m_trace;
    LoopMode m_loop = LoopMode::Restart;
};

} // namespace ranai
