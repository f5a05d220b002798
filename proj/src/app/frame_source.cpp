#include "ranai/app/frame_source.hpp"

#include "ranai/util/csv.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace ranai {

FrameTrace
FrameTrace::Parse(std::istream& in, const ModeTable& modes)
{
    std::string line;
    if (!ReadLine(in, line))
    {
        throw FrameTraceError("line 1: missing header");
    }
    if (SplitCsvLine(line) != std::vector<std::string>{"frameIndex", "mode", "sizeBytes"})
    {
        throw FrameTraceError("line 1: header must be frameIndex,mode,sizeBytes");
    }
    std::map<std::size_t, std::vector<std::optional<std::uint64_t>>> rows;
    std::size_t lineNo = 1;
    while (ReadLine(in, line))
    {
        ++lineNo;
        if (line.find_first_not_of(" \t") == std::string::npos)
        {
            continue;
        }
        const auto f = SplitCsvLine(line);
        auto fail = [&](const std::string& what) {
            return FrameTraceError("line " + std::to_string(lineNo) + ": " + what);
        };
        if (f.size() != 3)
        {
            throw fail("expected 3 fields");
        }
        const auto idx = ParseUint(f[0]);
        const auto mode = modes.Find(f[1]);
        const auto size = ParseUint(f[2]);
        if (!idx)
        {
            throw fail("invalid frame index");
        }
        if (!mode)
        {
            throw fail("unknown mode '" + f[1] + "'");
        }
        if (!size || *size == 0)
        {
            throw fail("frame size must be a positive integer");
        }
        auto& row = rows[*idx];
        row.resize(modes.Size());
        if (row[*mode])
        {
            throw fail("duplicate entry");
        }
        row[*mode] = *size;
    }

    std::vector<std::vector<std::uint64_t>> sizes;
    for (const auto& [idx, row] : rows)
    {
        if (idx != sizes.size())
        {
            throw FrameTraceError("frame indices must be contiguous from 0");
        }
        std::vector<std::uint64_t> out;
        for (std::size_t m = 0; m < row.size(); ++m)
        {
            if (!row[m])
            {
                throw FrameTraceError("frame " + std::to_string(idx) + " has no size for mode " +
                                      modes.At(static_cast<ModeIndex>(m)).name);
            }
            out.push_back(*row[m]);
        }
        sizes.push_back(std::move(out));
    }
    if (sizes.empty())
    {
        throw FrameTraceError("frame trace has no rows");
    }
    return FrameTrace(std::move(sizes));
}

FrameTrace::FrameTrace(std::vector<std::vector<std::uint64_t>> sizes)
    : m_sizes(std::move(sizes))
{
}

std::uint64_t
FrameTrace::MaxSize() const
{
    std::uint64_t m = 0;
    for (const auto& row : m_sizes)
    {
        for (auto s : row)
        {
            m = std::max(m, s);
        }
    }
    return m;
}

void
FrameTrace::Write(std::ostream& out, const ModeTable& modes) const
{
    out << "frameIndex,mode,sizeBytes\n";
    for (std::size_t f = 0; f < m_sizes.size(); ++f)
    {
        for (std::size_t m = 0; m < m_sizes[f].size(); ++m)
        {
            out << f << ',' << modes.At(static_cast<ModeIndex>(m)).name << ',' << m_sizes[f][m]
                << '\n';
        }
    }
}

FrameSizer::FrameSizer(ModeTable modes, double jitter)
    : m_modes(std::move(modes)),
      m_jitter(jitter)
{
    if (!(jitter >= 0.0 && jitter < 1.0))
    {
        throw std::invalid_argument("frame size jitter must lie in [0, 1)");
    }
}

FrameSizer::FrameSizer(ModeTable modes, FrameTrace trace, LoopMode loop)
    : m_modes(std::move(modes)),
      m_trace(std::move(trace)),
      m_loop(loop)
{
    if (m_trace->FrameCount() == 0)
    {
        throw std::invalid_argument("frame trace is empty");
    }
}

std::optional<std::uint64_t>
FrameSizer::Size(std::uint64_t frameCounter, ModeIndex mode, RngStream& rng) const
{
    if (m_trace)
    {
        const std::uint64_t n = m_trace->FrameCount();
        if (frameCounter >= n && m_loop == LoopMode::Stop)
        {
            return std::nullopt;
        }
        return m_trace->Size(static_cast<std::size_t>(frameCounter % n), mode);
    }
    const double u = rng.Uniform(-1.0, 1.0);
    const double bytes = m_modes.At(mode).meanFrameBytes * (1.0 + m_jitter * u);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(bytes)));
}

std::uint64_t
FrameSizer::MaxFrameBytes() const
{
    if (m_trace)
    {
        return m_trace->MaxSize();
    }
    double m = 0.0;
    for (const auto& mode : m_modes.Modes())
    {
        m = std::max(m, mode.meanFrameBytes);
    }
    return static_cast<std::uint64_t>(std::llround(m * (1.0 + m_jitter)));
}

} // namespace ranai
