#include "ranai/channel/synthetic_channel.hpp"

#include "ranai/sim/sim_time.hpp"
#include "ranai/util/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ranai {

void
WaypointSet::SetPath(NodeId vehicle, std::vector<Waypoint> path)
{
    if (path.empty())
    {
        throw TraceError("empty path for node " + std::to_string(vehicle));
    }
    for (std::size_t i = 1; i < path.size(); ++i)
    {
        if (!(path[i].time > path[i - 1].time))
        {
            throw TraceError("path of node " + std::to_string(vehicle) +
                             " is not strictly increasing in time");
        }
    }
    m_paths[vehicle] = std::move(path);
}

Waypoint
WaypointSet::PositionAt(NodeId vehicle, double t) const
{
    auto it = m_paths.find(vehicle);
    if (it == m_paths.end())
    {
        throw TraceError("no path for node " + std::to_string(vehicle));
    }
    const auto& path = it->second;
    constexpr double kSlack = 1e-9;
    if (t < path.front().time - kSlack || t > path.back().time + kSlack)
    {
        throw TraceError("node " + std::to_string(vehicle) + " leaves its defined path at t=" +
                         FormatDouble(t));
    }
    if (path.size() == 1 || t <= path.front().time)
    {
        return {t, path.front().x, path.front().y};
    }
    if (t >= path.back().time)
    {
        return {t, path.back().x, path.back().y};
    }
    auto hi = std::upper_bound(path.begin(), path.end(), t,
                               [](double v, const Waypoint& w) { return v < w.time; });
    auto lo = hi - 1;
    const double f = (t - lo->time) / (hi->time - lo->time);
    return {t, lo->x + f * (hi->x - lo->x), lo->y + f * (hi->y - lo->y)};
}

void
SynthChannelConfig::Validate() const
{
    if (!(referenceDistance > 0.0) || !(minDistance > 0.0))
    {
        throw std::invalid_argument("synthetic channel: distances must be positive");
    }
    if (!(timeStep > 0.0) || !(duration >= 0.0))
    {
        throw std::invalid_argument("synthetic channel: time step must be positive");
    }
    if (shadowingSigmaDb < 0.0 || !(shadowingCorrTime > 0.0))
    {
        throw std::invalid_argument("synthetic channel: invalid shadowing parameters");
    }
}

double
PathLossDb(const SynthChannelConfig& cfg, double distance)
{
    const double d = std::max(distance, cfg.minDistance);
    return cfg.referenceLossDb + 10.0 * cfg.exponent * std::log10(d / cfg.referenceDistance);
}

ChannelTrace
SynthesizeTrace(const WaypointSet& mobility, const SynthChannelConfig& model, const RngStream& rng)
{
    model.Validate();
    const std::int64_t stepUs = SimTime::Seconds(model.timeStep).GetMicros();
    const std::int64_t steps = SimTime::Seconds(model.duration).GetMicros() / stepUs;
    const double rho = std::exp(-model.timeStep / model.shadowingCorrTime);
    const double innovation = std::sqrt(1.0 - rho * rho);
    const double dz = model.gnbHeight - model.ueHeight;

    std::vector<TraceEntry> entries;
    entries.reserve(static_cast<std::size_t>(steps + 1) * mobility.Paths().size());
    for (const auto& [node, path] : mobility.Paths())
    {
        RngStream shadowRng = rng.Derive("node" + std::to_string(node));
        double shadow = model.shadowingSigmaDb * shadowRng.Normal(0.0, 1.0);
        for (std::int64_t k = 0; k <= steps; ++k)
        {
            const double t = SimTime::Micros(k * stepUs).GetSeconds();
            if (k > 0)
            {
                shadow = rho * shadow +
                         innovation * model.shadowingSigmaDb * shadowRng.Normal(0.0, 1.0);
            }
            const auto pos = mobility.PositionAt(node, t);
            const double dx = pos.x - model.gnbX;
            const double dy = pos.y - model.gnbY;
            const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
            TraceEntry e;
            e.time = t;
            e.tx = node;
            e.rx = model.gnbId;
            e.lossDb = std::max(0.0, PathLossDb(model, dist) + shadow);
            entries.push_back(e);
        }
    }
    return ChannelTrace(std::move(entries));
}

WaypointSet
MakeLoopMobility(const LoopRouteConfig& route,
                 NodeId firstId,
                 std::size_t count,
                 double duration,
                 const RngStream& rng)
{
    const auto& v = route.vertices;
    if (v.size() < 2 || !(route.speed > 0.0) || route.slots == 0)
    {
        throw std::invalid_argument("loop route needs >= 2 vertices, positive speed and slots");
    }
    std::vector<double> segLen(v.size());
    double perimeter = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        segLen[i] = std::hypot(b.first - a.first, b.second - a.second);
        perimeter += segLen[i];
    }
    if (!(perimeter > 0.0))
    {
        throw std::invalid_argument("loop route has zero length");
    }

    auto pointAt = [&](double s) {
        s = std::fmod(s, perimeter);
        if (s < 0.0)
        {
            s += perimeter;
        }
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (s <= segLen[i] || i + 1 == v.size())
            {
                const auto& a = v[i];
                const auto& b = v[(i + 1) % v.size()];
                const double f = segLen[i] > 0.0 ? std::min(1.0, s / segLen[i]) : 0.0;
                return std::pair{a.first + f * (b.first - a.first),
                                 a.second + f * (b.second - a.second)};
            }
            s -= segLen[i];
        }
        return v.front();
    };

    WaypointSet set;
    for (std::size_t i = 0; i < count; ++i)
    {
        const NodeId node = firstId + static_cast<NodeId>(i);
        RngStream r = rng.Derive("node" + std::to_string(node));
        const double spacing = perimeter / static_cast<double>(route.slots);
        const double start = spacing * static_cast<double>(i % route.slots) +
                             route.startJitter * spacing * r.Uniform();

        // Arc-length positions of vertex crossings within [start, start + speed * duration].
        std::vector<double> marks{0.0};
        double cum = 0.0;
        const double travel = route.speed * duration;
        for (std::size_t lap = 0; cum <= start + travel; ++lap)
        {
            for (std::size_t k = 0; k < v.size(); ++k)
            {
                cum += segLen[k];
                const double rel = cum - start;
                if (rel > 0.0 && rel < travel)
                {
                    marks.push_back(rel);
                }
            }
        }
        marks.push_back(travel);

        std::vector<Waypoint> path;
        for (double rel : marks)
        {
            const double t = rel / route.speed;
            if (!path.empty() && !(t > path.back().time))
            {
                continue;
            }
            auto [x, y] = pointAt(start + rel);
            path.push_back({t, x, y});
        }
        set.SetPath(node, std::move(path));
    }
    return set;
}

} // namespace ranai
