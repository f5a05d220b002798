#pragma once

#include "ranai/channel/channel_trace.hpp"
#include "ranai/sim/rng.hpp"

#include <map>
#include <vector>

namespace ranai {

struct Waypoint
{
    double time = 0.0; // seconds
    double x = 0.0;
    double y = 0.0;
};

/// Piecewise-linear vehicle trajectories keyed by node id.
class WaypointSet
{
  public:
    /// Waypoints must be strictly increasing in time.
    void SetPath(NodeId vehicle, std::vector<Waypoint> path);
    const std::map<NodeId, std::vector<Waypoint>>& Paths() const { return m_paths; }

    /// Throws TraceError when t lies outside the vehicle's path.
    Waypoint PositionAt(NodeId vehicle, double t) const;

  private:
    std::map<NodeId, std::vector<Waypoint>> m_paths;
};

struct SynthChannelConfig
{
    NodeId gnbId = 0;
    double gnbX = 0.0;
    double gnbY = 0.0;
    double gnbHeight = 6.5;
    double ueHeight = 1.5;
    // Log-distance path loss PL(d) = PL0 + 10 n log10(d / d0).
    double referenceLossDb = 61.0;
    double referenceDistance = 10.0;
    double exponent = 2.7;
    double minDistance = 1.0;
    // AR(1) log-normal shadowing with correlation exp(-dt / corrTime).
    double shadowingSigmaDb = 4.0;
    double shadowingCorrTime = 2.0;
    double timeStep = 0.1;
    double duration = 80.0;

    void Validate() const;
};

double PathLossDb(const SynthChannelConfig& cfg, double distance);

/// One uplink entry (vehicle -> gNB) per vehicle per snapshot at
/// k * timeStep for k = 0..duration/timeStep. Each vehicle draws its
/// shadowing from rng.Derive("node<id>"), so adding vehicles leaves the
/// existing ones untouched.
ChannelTrace SynthesizeTrace(const WaypointSet& mobility,
                             const SynthChannelConfig& model,
                             const RngStream& rng);

/// Closed polygon route driven at constant speed.
struct LoopRouteConfig
{
    std::vector<std::pair<double, double>> vertices{{-60.0, -40.0},
                                                    {420.0, -40.0},
                                                    {420.0, 160.0},
                                                    {-60.0, 160.0}};
    double speed = 10.0; // m/s
    /// Vehicle i starts at perimeter fraction i / slots, perturbed by up to
    /// startJitter of that spacing. Independent of how many vehicles exist.
    std::size_t slots = 5;
    double startJitter = 0.5;
};

/// Builds paths for vehicles with node ids firstId .. firstId + count - 1
/// covering [0, duration]. Vehicle i only consumes rng.Derive("node<id>").
WaypointSet MakeLoopMobility(const LoopRouteConfig& route,
                             NodeId firstId,
                             std::size_t count,
                             double duration,
                             const RngStream& rng);

} // namespace ranai
