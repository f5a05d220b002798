#pragma once

#include "ranai/sim/sim_time.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace ranai {

class EventHandle
{
  public:
    EventHandle() = default;

    void Cancel();
    bool IsCancelled() const;

  private:
    friend class Simulator;
    explicit EventHandle(std::shared_ptr<bool> cancelled)
        : m_cancelled(std::move(cancelled))
    {
    }

    std::shared_ptr<bool> m_cancelled;
};

struct RunReport
{
    std::uint64_t eventsDispatched = 0;
    SimTime clock;
    double wallSeconds = 0.0;
};

/// Single-threaded discrete-event engine. Events are ordered by
/// (fire time, insertion sequence), so equal-time events run FIFO.
class Simulator
{
  public:
    using Callback = std::function<void()>;

    Simulator() = default;
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    /// Schedules at an absolute time. Throws std::logic_error if `at` lies in
    /// the past.
    EventHandle Schedule(SimTime at, Callback cb);
    EventHandle ScheduleIn(SimTime delay, Callback cb);

    /// Dispatches every event with fire time <= end, then sets the clock to
    /// end.
    RunReport RunUntil(SimTime end);

    SimTime Now() const { return m_now; }
    std::size_t PendingEvents() const { return m_queue.size(); }

  private:
    struct Event
    {
        SimTime fireTime;
        std::uint64_t sequence;
        Callback callback;
        std::shared_ptr<bool> cancelled;
    };

    struct Later
    {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.fireTime != b.fireTime)
            {
                return a.fireTime > b.fireTime;
            }
            return a.sequence > b.sequence;
        }
    };

    std::vector<Event> m_queue;
    SimTime m_now;
    std::uint64_t m_nextSequence = 0;
    std::uint64_t m_dispatched = 0;
};

} // namespace ranai
