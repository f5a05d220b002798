#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace ranai {

// Simulation time in integer microseconds. Also used for durations.
class SimTime
{
  public:
    constexpr SimTime() = default;

    static constexpr SimTime Micros(std::int64_t us) { return SimTime(us); }
    static constexpr SimTime Millis(std::int64_t ms) { return SimTime(ms * 1000); }

    // Rounds to the nearest microsecond.
    static SimTime Seconds(double s)
    {
        if (!std::isfinite(s))
        {
            throw std::invalid_argument("SimTime::Seconds: non-finite value");
        }
        return SimTime(std::llround(s * 1e6));
    }

    constexpr std::int64_t GetMicros() const { return m_us; }
    constexpr double GetSeconds() const { return static_cast<double>(m_us) / 1e6; }
    constexpr double GetMillis() const { return static_cast<double>(m_us) / 1e3; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(m_us + o.m_us); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(m_us - o.m_us); }
    constexpr SimTime operator*(std::int64_t k) const { return SimTime(m_us * k); }
    constexpr SimTime& operator+=(SimTime o)
    {
        m_us += o.m_us;
        return *this;
    }

  private:
    constexpr explicit SimTime(std::int64_t us)
        : m_us(us)
    {
    }

    std::int64_t m_us = 0;
};

} // namespace ranai
