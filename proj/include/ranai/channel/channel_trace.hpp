#pragma once

#include "ranai/sim/sim_time.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ranai {

using NodeId = std::uint32_t;

class TraceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct TraceEntry
{
    double time = 0.0; // seconds
    NodeId tx = 0;
    NodeId rx = 0;
    double lossDb = 0.0;
    double smallScaleDb = 0.0;

    double TotalLossDb() const { return lossDb + smallScaleDb; }
    bool operator==(const TraceEntry&) const = default;
};

/// Column layout of a propagation-loss CSV. The default matches the GEMV2
/// style export (time,txId,rxId,lossDb[,smallScaleDb]); other exporters can
/// be read by renaming the columns here.
struct TraceFormat
{
    std::string timeColumn = "time";
    std::string txColumn = "txId";
    std::string rxColumn = "rxId";
    std::string lossColumn = "lossDb";
    std::string smallScaleColumn = "smallScaleDb";
};

/// Time-indexed per-link propagation loss. Immutable once built.
class ChannelTrace
{
  public:
    ChannelTrace() = default;
    /// Validates and sorts by (time, tx, rx). Throws TraceError on duplicate
    /// (time, tx, rx) keys, non-finite values or negative large-scale loss.
    explicit ChannelTrace(std::vector<TraceEntry> entries);

    const std::vector<TraceEntry>& Entries() const { return m_entries; }
    bool Empty() const { return m_entries.empty(); }

    /// Spacing between the first two distinct snapshot times, 0 if there is
    /// only one snapshot.
    double TimeStep() const { return m_timeStep; }
    std::size_t SnapshotCount() const { return m_snapshotCount; }
    std::vector<std::pair<NodeId, NodeId>> Links() const;
    bool HasLink(NodeId tx, NodeId rx) const;

    /// Zero-order hold: total loss of the latest snapshot at or before t, or
    /// of the first snapshot when t precedes it. Throws TraceError for an
    /// unknown link.
    double LossAt(NodeId tx, NodeId rx, SimTime t) const;

    bool operator==(const ChannelTrace& o) const { return m_entries == o.m_entries; }

  private:
    struct LinkSeries
    {
        std::vector<SimTime> times;
        std::vector<double> loss;
    };

    std::vector<TraceEntry> m_entries;
    std::map<std::pair<NodeId, NodeId>, LinkSeries> m_links;
    double m_timeStep = 0.0;
    std::size_t m_snapshotCount = 0;
};

/// Parses a CSV trace. Errors carry the 1-based line number.
ChannelTrace ParseTrace(std::istream& in, const TraceFormat& format = {});
void WriteTrace(std::ostream& out, const ChannelTrace& trace);

} // namespace ranai
