#include "ranai/channel/channel_trace.hpp"
#include "ranai/channel/link_budget.hpp"
#include "ranai/channel/synthetic_channel.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace ranai;

namespace {

ChannelTrace
Parse(const std::string& text)
{
    std::istringstream in(text);
    return ParseTrace(in);
}

std::string
ErrorOf(const std::string& text)
{
    try
    {
        Parse(text);
    }
    catch (const TraceError& e)
    {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("minimal two-row trace parses")
{
    const auto t = Parse("time,txId,rxId,lossDb\n0,1,0,100\n0.1,1,0,103\n");
    CHECK(t.Entries().size() == 2);
    CHECK(t.SnapshotCount() == 2);
    CHECK(t.TimeStep() == doctest::Approx(0.1));
    CHECK(t.HasLink(1, 0));
    CHECK_FALSE(t.HasLink(0, 1));
}

TEST_CASE("small-scale column adds to the loss")
{
    const auto t = Parse("time,txId,rxId,lossDb,smallScaleDb\n0,1,0,100,2.5\n");
    CHECK(t.LossAt(1, 0, SimTime()) == 102.5);
}

TEST_CASE("columns may come in any order")
{
    const auto t = Parse("rxId,lossDb,time,txId\n0,90,0,2\n");
    CHECK(t.LossAt(2, 0, SimTime()) == 90.0);
}

TEST_CASE("malformed traces are rejected with a line number")
{
    CHECK(ErrorOf("time,txId,rxId,lossDb\n0,1,0,100\n0.1,1,0,-3\n").find("line 3") !=
          std::string::npos);
    CHECK(ErrorOf("time,txId,rxId,lossDb\n0,1,0\n").find("line 2") != std::string::npos);
    CHECK(ErrorOf("time,txId,rxId,lossDb\n0,1,0,abc\n").find("line 2") != std::string::npos);
    CHECK(ErrorOf("time,txId,rxId,lossDb\n0.2,1,0,100\n0.1,1,0,100\n").find("line 3") !=
          std::string::npos);
    CHECK_FALSE(ErrorOf("time,txId,rxId,lossDb,foo\n0,1,0,1,2\n").empty());
    CHECK_FALSE(ErrorOf("time,txId,lossDb\n0,1,100\n").empty());
    CHECK_FALSE(ErrorOf("time,txId,rxId,lossDb\n0,1,0,100\n0,1,0,101\n").empty());
}

TEST_CASE("zero-order hold lookup")
{
    const auto t = Parse("time,txId,rxId,lossDb\n0,1,0,100\n0.1,1,0,103\n0.2,1,0,104\n0.3,1,0,105\n");
    CHECK(t.LossAt(1, 0, SimTime::Seconds(0.05)) == 100.0);
    CHECK(t.LossAt(1, 0, SimTime::Seconds(0.1)) == 103.0);
    CHECK(t.LossAt(1, 0, SimTime::Seconds(0.35)) == 105.0);
    CHECK_THROWS_AS(t.LossAt(3, 0, SimTime()), TraceError);
}

TEST_CASE("queries before the first snapshot return the first value")
{
    const auto t = Parse("time,txId,rxId,lossDb\n1,1,0,90\n2,1,0,95\n");
    CHECK(t.LossAt(1, 0, SimTime()) == 90.0);
}

TEST_CASE("trace write then parse round-trips")
{
    const auto t = Parse("time,txId,rxId,lossDb,smallScaleDb\n0,1,0,100.125,0.5\n0.1,1,0,99.5,-1\n");
    std::stringstream ss;
    WriteTrace(ss, t);
    CHECK(ParseTrace(ss) == t);
}

TEST_CASE("received power is transmit power minus loss")
{
    LinkBudgetConfig b;
    CHECK(RxPowerDbm(b, 100.0) == -77.0);
    CHECK(RxPowerDbm(b, 0.0) == 23.0);
    CHECK(RxPowerDbm(b, 120.5) == -97.5);
}

TEST_CASE("SNR against the thermal noise floor")
{
    LinkBudgetConfig b;
    CHECK(NoiseFloorDbm(b) == doctest::Approx(-92.0103).epsilon(1e-6));
    CHECK(SnrDb(b, -77.0) == doctest::Approx(15.0103).epsilon(1e-6));
    CHECK(SnrDb(b, NoiseFloorDbm(b)) == 0.0);
    CHECK(SnrDb(b, -102.0103) == doctest::Approx(-10.0).epsilon(1e-4));
    LinkBudgetConfig bad;
    bad.bandwidthHz = 0.0;
    CHECK_THROWS(bad.Validate());
}

TEST_CASE("log-distance path loss")
{
    SynthChannelConfig c;
    CHECK(PathLossDb(c, 10.0) == doctest::Approx(61.0));
    CHECK(PathLossDb(c, 100.0) == doctest::Approx(88.0));
}

TEST_CASE("static vehicle at the reference distance without shadowing has constant loss")
{
    SynthChannelConfig c;
    c.shadowingSigmaDb = 0.0;
    c.gnbHeight = c.ueHeight;
    c.duration = 2.0;
    WaypointSet w;
    w.SetPath(1, {{0.0, 10.0, 0.0}, {2.0, 10.0, 0.0}});
    const auto t = SynthesizeTrace(w, c, RngStream(1, "channel"));
    for (const auto& e : t.Entries())
    {
        CHECK(e.lossDb == doctest::Approx(61.0));
    }
}

TEST_CASE("synthetic trace has one uplink entry per vehicle per snapshot")
{
    SynthChannelConfig c;
    const auto mob = MakeLoopMobility(LoopRouteConfig{}, 1, 5, 80.0, RngStream(3, "mobility"));
    const auto t = SynthesizeTrace(mob, c, RngStream(3, "channel"));
    CHECK(t.SnapshotCount() == 801);
    CHECK(t.Entries().size() == 801 * 5);
    for (NodeId v = 1; v <= 5; ++v)
    {
        CHECK(t.HasLink(v, 0));
    }
}

TEST_CASE("shadowing is reproducible per seed and differs across seeds")
{
    SynthChannelConfig c;
    c.duration = 10.0;
    const auto mob = MakeLoopMobility(LoopRouteConfig{}, 1, 1, 10.0, RngStream(3, "mobility"));
    const auto a = SynthesizeTrace(mob, c, RngStream(1, "channel"));
    const auto b = SynthesizeTrace(mob, c, RngStream(1, "channel"));
    const auto d = SynthesizeTrace(mob, c, RngStream(2, "channel"));
    CHECK(a == b);
    CHECK_FALSE(a == d);
}

TEST_CASE("shadowing has the configured spread")
{
    SynthChannelConfig c;
    c.duration = 4000.0;
    c.gnbHeight = c.ueHeight;
    WaypointSet w;
    w.SetPath(1, {{0.0, 10.0, 0.0}, {4000.0, 10.0, 0.0}});
    const auto t = SynthesizeTrace(w, c, RngStream(11, "channel"));
    double sum = 0.0, sq = 0.0;
    for (const auto& e : t.Entries())
    {
        const double s = e.lossDb - 61.0;
        sum += s;
        sq += s * s;
    }
    const double n = static_cast<double>(t.Entries().size());
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.6);
    CHECK(std::sqrt(sq / n - mean * mean) == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("a vehicle's trace does not depend on how many vehicles exist")
{
    SynthChannelConfig c;
    c.duration = 20.0;
    const auto one = SynthesizeTrace(MakeLoopMobility(LoopRouteConfig{}, 1, 1, 20.0, RngStream(4, "m")),
                                     c, RngStream(4, "c"));
    const auto five = SynthesizeTrace(MakeLoopMobility(LoopRouteConfig{}, 1, 5, 20.0, RngStream(4, "m")),
                                      c, RngStream(4, "c"));
    for (int k = 0; k <= 200; k += 7)
    {
        const auto t = SimTime::Millis(100 * k);
        CHECK(one.LossAt(1, 0, t) == five.LossAt(1, 0, t));
    }
}

TEST_CASE("positions outside a path are an error")
{
    WaypointSet w;
    w.SetPath(1, {{0.0, 0.0, 0.0}, {1.0, 10.0, 0.0}});
    CHECK(w.PositionAt(1, 0.5).x == doctest::Approx(5.0));
    CHECK_THROWS_AS(w.PositionAt(1, 2.0), TraceError);
    CHECK_THROWS(w.SetPath(2, {{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}}));
    SynthChannelConfig c;
    c.duration = 5.0;
    CHECK_THROWS_AS(SynthesizeTrace(w, c, RngStream(1, "c")), TraceError);
}

TEST_CASE("loop route drives at the configured speed")
{
    LoopRouteConfig r;
    r.startJitter = 0.0;
    const auto w = MakeLoopMobility(r, 1, 1, 10.0, RngStream(1, "m"));
    const auto a = w.PositionAt(1, 1.0);
    const auto b = w.PositionAt(1, 2.0);
    CHECK(std::hypot(b.x - a.x, b.y - a.y) == doctest::Approx(10.0).epsilon(1e-6));
}
