#include "ranai/sim/rng.hpp"
#include "ranai/sim/simulator.hpp"

#include <doctest.h>

#include <set>

using namespace ranai;

TEST_CASE("event at t=0 scheduled from t=0 fires first")
{
    Simulator sim;
    std::vector<int> order;
    sim.Schedule(SimTime::Millis(1), [&] { order.push_back(2); });
    sim.Schedule(SimTime(), [&] { order.push_back(1); });
    sim.RunUntil(SimTime::Seconds(1));
    CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("equal fire times dispatch in insertion order")
{
    Simulator sim;
    std::string order;
    sim.Schedule(SimTime::Micros(100), [&] { order += "A"; });
    sim.Schedule(SimTime::Micros(100), [&] { order += "B"; });
    sim.Schedule(SimTime::Micros(100), [&] { order += "C"; });
    sim.RunUntil(SimTime::Micros(100));
    CHECK(order == "ABC");
}

TEST_CASE("scheduling in the past is rejected")
{
    Simulator sim;
    sim.Schedule(SimTime::Micros(60), [&] {
        CHECK_THROWS_AS(sim.Schedule(SimTime::Micros(50), [] {}), std::logic_error);
    });
    sim.RunUntil(SimTime::Micros(100));
}

TEST_CASE("run_until on an empty queue only advances the clock")
{
    Simulator sim;
    const auto report = sim.RunUntil(SimTime::Seconds(80));
    CHECK(report.eventsDispatched == 0);
    CHECK(sim.Now() == SimTime::Seconds(80));
    CHECK(report.clock == SimTime::Seconds(80));
}

TEST_CASE("one event before the end is dispatched, later ones stay queued")
{
    Simulator sim;
    int fired = 0;
    sim.Schedule(SimTime::Millis(100), [&] { ++fired; });
    sim.Schedule(SimTime::Seconds(81), [&] { ++fired; });
    const auto report = sim.RunUntil(SimTime::Seconds(80));
    CHECK(report.eventsDispatched == 1);
    CHECK(fired == 1);
    CHECK(sim.PendingEvents() == 1);
}

TEST_CASE("cancelled events do not fire")
{
    Simulator sim;
    int fired = 0;
    auto h = sim.Schedule(SimTime::Millis(5), [&] { ++fired; });
    h.Cancel();
    sim.RunUntil(SimTime::Millis(10));
    CHECK(fired == 0);
    CHECK(h.IsCancelled());
}

TEST_CASE("clock is monotone across randomly scheduled events")
{
    Simulator sim;
    RngStream rng(7, "sched");
    SimTime last;
    bool monotone = true;
    std::function<void()> spawn = [&] {
        if (sim.Now() < last)
        {
            monotone = false;
        }
        last = sim.Now();
        if (rng.Uniform() < 0.9)
        {
            sim.ScheduleIn(SimTime::Micros(static_cast<std::int64_t>(rng.UniformInt(50))), spawn);
        }
    };
    for (int i = 0; i < 20; ++i)
    {
        sim.Schedule(SimTime::Micros(static_cast<std::int64_t>(rng.UniformInt(1000))), spawn);
    }
    sim.RunUntil(SimTime::Seconds(1));
    CHECK(monotone);
}

TEST_CASE("SimTime conversions are exact on decimal boundaries")
{
    CHECK(SimTime::Seconds(0.1).GetMicros() == 100'000);
    CHECK(SimTime::Millis(100).GetSeconds() == 0.1);
    CHECK(SimTime::Micros(79'900'000).GetSeconds() == 79.9);
    CHECK_THROWS(SimTime::Seconds(std::nan("")));
}

TEST_CASE("identical seed and stream id give identical draws")
{
    RngStream a(42, "channel"), b(42, "channel");
    for (int i = 0; i < 100; ++i)
    {
        CHECK(a.NextU64() == b.NextU64());
    }
}

TEST_CASE("streams with different ids or seeds differ")
{
    RngStream a(42, "channel"), b(42, "app"), c(43, "channel");
    int sameAb = 0, sameAc = 0;
    for (int i = 0; i < 100; ++i)
    {
        const auto x = a.NextU64();
        sameAb += x == b.NextU64();
        sameAc += x == c.NextU64();
    }
    CHECK(sameAb == 0);
    CHECK(sameAc == 0);
}

TEST_CASE("drawing from one stream never perturbs another")
{
    RngStream app1(5, "app"), app2(5, "app");
    RngStream loss(5, "notification-loss");
    std::vector<double> undisturbed, disturbed;
    for (int i = 0; i < 50; ++i)
    {
        undisturbed.push_back(app1.Uniform());
    }
    for (int i = 0; i < 50; ++i)
    {
        loss.Bernoulli(0.3);
        disturbed.push_back(app2.Uniform());
    }
    CHECK(undisturbed == disturbed);
}

TEST_CASE("uniform draws stay in range and look uniform")
{
    RngStream r(1, "u");
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
    {
        const double u = r.Uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
    for (int i = 0; i < 1000; ++i)
    {
        CHECK(r.UniformInt(3) < 3);
    }
    CHECK_FALSE(r.Bernoulli(0.0));
    CHECK(r.Bernoulli(1.0));
}

TEST_CASE("derived streams are reproducible and named after the parent")
{
    RngStream p(9, "app");
    auto c1 = p.Derive("ue0");
    auto c2 = RngStream(9, "app").Derive("ue0");
    CHECK(c1.GetId() == "app/ue0");
    CHECK(c1.NextU64() == c2.NextU64());
}

TEST_CASE("MixSeed separates labels")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 1000; ++k)
    {
        seen.insert(MixSeed(1, k));
    }
    CHECK(seen.size() == 1000);
    CHECK(MixSeed(1, 3) == MixSeed(1, 3));
    CHECK(MixSeed(1, 3) != MixSeed(2, 3));
}
