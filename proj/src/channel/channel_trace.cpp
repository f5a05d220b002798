#include "ranai/channel/channel_trace.hpp"

#include "ranai/util/csv.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <tuple>

namespace ranai {

namespace {

std::string
LinkName(NodeId tx, NodeId rx)
{
    return "(" + std::to_string(tx) + " -> " + std::to_string(rx) + ")";
}

} // namespace

ChannelTrace::ChannelTrace(std::vector<TraceEntry> entries)
    : m_entries(std::move(entries))
{
    std::stable_sort(m_entries.begin(), m_entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.time, a.tx, a.rx) < std::tie(b.time, b.tx, b.rx);
    });

    std::set<double> times;
    for (std::size_t i = 0; i < m_entries.size(); ++i)
    {
        const auto& e = m_entries[i];
        if (!std::isfinite(e.time) || e.time < 0.0)
        {
            throw TraceError("trace entry " + std::to_string(i) + ": invalid timestamp");
        }
        if (!std::isfinite(e.lossDb) || !std::isfinite(e.smallScaleDb))
        {
            throw TraceError("trace entry " + std::to_string(i) + ": non-finite loss");
        }
        if (e.lossDb < 0.0)
        {
            throw TraceError("trace entry " + std::to_string(i) + ": negative loss on link " +
                             LinkName(e.tx, e.rx));
        }
        if (i > 0)
        {
            const auto& p = m_entries[i - 1];
            if (p.time == e.time && p.tx == e.tx && p.rx == e.rx)
            {
                throw TraceError("duplicate entry for link " + LinkName(e.tx, e.rx) + " at t=" +
                                 FormatDouble(e.time));
            }
        }
        times.insert(e.time);
        auto& series = m_links[{e.tx, e.rx}];
        series.times.push_back(SimTime::Seconds(e.time));
        series.loss.push_back(e.TotalLossDb());
    }
    m_snapshotCount = times.size();
    if (times.size() >= 2)
    {
        auto it = times.begin();
        const double t0 = *it++;
        m_timeStep = *it - t0;
    }
}

std::vector<std::pair<NodeId, NodeId>>
ChannelTrace::Links() const
{
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(m_links.size());
    for (const auto& [key, _] : m_links)
    {
        out.push_back(key);
    }
    return out;
}

bool
ChannelTrace::HasLink(NodeId tx, NodeId rx) const
{
    return m_links.count({tx, rx}) != 0;
}

double
ChannelTrace::LossAt(NodeId tx, NodeId rx, SimTime t) const
{
    auto it = m_links.find({tx, rx});
    if (it == m_links.end())
    {
        throw TraceError("no trace data for link " + LinkName(tx, rx));
    }
    const auto& s = it->second;
    auto pos = std::upper_bound(s.times.begin(), s.times.end(), t);
    if (pos == s.times.begin())
    {
        return s.loss.front();
    }
    return s.loss[static_cast<std::size_t>(pos - s.times.begin()) - 1];
}

ChannelTrace
ParseTrace(std::istream& in, const TraceFormat& format)
{
    std::string line;
    std::size_t lineNo = 0;
    if (!ReadLine(in, line))
    {
        throw TraceError("line 1: missing header row");
    }
    ++lineNo;

    const auto header = SplitCsvLine(line);
    std::optional<std::size_t> timeCol, txCol, rxCol, lossCol, smallCol;
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        const auto& name = header[i];
        std::optional<std::size_t>* slot = nullptr;
        if (name == format.timeColumn)
        {
            slot = &timeCol;
        }
        else if (name == format.txColumn)
        {
            slot = &txCol;
        }
        else if (name == format.rxColumn)
        {
            slot = &rxCol;
        }
        else if (name == format.lossColumn)
        {
            slot = &lossCol;
        }
        else if (name == format.smallScaleColumn)
        {
            slot = &smallCol;
        }
        else
        {
            throw TraceError("line 1: unknown column '" + name + "'");
        }
        if (slot->has_value())
        {
            throw TraceError("line 1: duplicate column '" + name + "'");
        }
        *slot = i;
    }
    if (!timeCol || !txCol || !rxCol || !lossCol)
    {
        throw TraceError("line 1: header must name " + format.timeColumn + ", " +
                         format.txColumn + ", " + format.rxColumn + " and " + format.lossColumn);
    }

    std::vector<TraceEntry> entries;
    double lastTime = -1.0;
    while (ReadLine(in, line))
    {
        ++lineNo;
        if (line.find_first_not_of(" \t") == std::string::npos)
        {
            continue;
        }
        const auto fields = SplitCsvLine(line);
        auto fail = [&](const std::string& what) {
            return TraceError("line " + std::to_string(lineNo) + ": " + what);
        };
        if (fields.size() != header.size())
        {
            throw fail("expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
        }
        TraceEntry e;
        const auto t = ParseDouble(fields[*timeCol]);
        const auto tx = ParseUint(fields[*txCol]);
        const auto rx = ParseUint(fields[*rxCol]);
        const auto loss = ParseDouble(fields[*lossCol]);
        if (!t || !std::isfinite(*t) || *t < 0.0)
        {
            throw fail("invalid time '" + fields[*timeCol] + "'");
        }
        if (!tx || !rx || *tx > UINT32_MAX || *rx > UINT32_MAX)
        {
            throw fail("invalid node id");
        }
        if (!loss || !std::isfinite(*loss))
        {
            throw fail("invalid loss '" + fields[*lossCol] + "'");
        }
        if (*loss < 0.0)
        {
            throw fail("negative loss " + fields[*lossCol]);
        }
        if (*t < lastTime)
        {
            throw fail("timestamp " + fields[*timeCol] + " goes backwards");
        }
        lastTime = *t;
        e.time = *t;
        e.tx = static_cast<NodeId>(*tx);
        e.rx = static_cast<NodeId>(*rx);
        e.lossDb = *loss;
        if (smallCol)
        {
            const auto small = ParseDouble(fields[*smallCol]);
            if (!small || !std::isfinite(*small))
            {
                throw fail("invalid small-scale loss '" + fields[*smallCol] + "'");
            }
            e.smallScaleDb = *small;
        }
        entries.push_back(e);
    }

    try
    {
        return ChannelTrace(std::move(entries));
    }
    catch (const TraceError& err)
    {
        throw TraceError(std::string("trace validation: ") + err.what());
    }
}

void
WriteTrace(std::ostream& out, const ChannelTrace& trace)
{
    out << "time,txId,rxId,lossDb,smallScaleDb\n";
    for (const auto& e : trace.Entries())
    {
        out << FormatDouble(e.time) << ',' << e.tx << ',' << e.rx << ','
            << FormatDouble(e.lossDb) << ',' << FormatDouble(e.smallScaleDb) << '\n';
    }
}

} // namespace ranai
