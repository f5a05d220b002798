#pragma once

#include "ranai/agent/agent_interface.hpp"
#include "ranai/sim/rng.hpp"

#include <vector>

namespace ranai {

/// Fixed-capacity ring of transitions; the oldest record is overwritten.
class ReplayBuffer
{
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void Add(Transition t);
    std::size_t Size() const { return m_items.size(); }
    std::size_t Capacity() const { return m_capacity; }

    /// n distinct records drawn uniformly (without replacement). Requires
    /// n <= Size().
    std::vector<const Transition*> Sample(std::size_t n, RngStream& rng) const;

  private:
    std::size_t m_capacity;
    std::size_t m_next = 0;
    std::vector<Transition> m_items;
};

} // namespace ranai
