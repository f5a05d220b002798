#include "ranai/sim/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

namespace ranai {

void
EventHandle::Cancel()
{
    if (m_cancelled)
    {
        *m_cancelled = true;
    }
}

bool
EventHandle::IsCancelled() const
{
    return m_cancelled && *m_cancelled;
}

EventHandle
Simulator::Schedule(SimTime at, Callback cb)
{
    if (at < m_now)
    {
        throw std::logic_error("Simulator::Schedule: event at " + std::to_string(at.GetMicros()) +
                               " us is before the current clock " +
                               std::to_string(m_now.GetMicros()) + " us");
    }
    auto flag = std::make_shared<bool>(false);
    m_queue.push_back(Event{at, m_nextSequence++, std::move(cb), flag});
    std::push_heap(m_queue.begin(), m_queue.end(), Later{});
    return EventHandle(std::move(flag));
}

EventHandle
Simulator::ScheduleIn(SimTime delay, Callback cb)
{
    return Schedule(m_now + delay, std::move(cb));
}

RunReport
Simulator::RunUntil(SimTime end)
{
    if (end < m_now)
    {
        throw std::logic_error("Simulator::RunUntil: end time is before the current clock");
    }
    const auto wallStart = std::chrono::steady_clock::now();
    const std::uint64_t before = m_dispatched;

    while (!m_queue.empty() && m_queue.front().fireTime <= end)
    {
        std::pop_heap(m_queue.begin(), m_queue.end(), Later{});
        Event ev = std::move(m_queue.back());
        m_queue.pop_back();
        m_now = ev.fireTime;
        if (*ev.cancelled)
        {
            continue;
        }
        ev.callback();
        ++m_dispatched;
    }
    m_now = end;

    RunReport report;
    report.eventsDispatched = m_dispatched - before;
    report.clock = m_now;
    report.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
    return report;
}

} // namespace ranai
