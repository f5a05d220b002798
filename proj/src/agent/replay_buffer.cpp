#include "ranai/agent/replay_buffer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ranai {

ReplayBuffer::ReplayBuffer(std::size_t capacity)
    : m_capacity(capacity)
{
    if (capacity == 0)
    {
        throw std::invalid_argument("replay capacity must be positive");
    }
    m_items.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void
ReplayBuffer::Add(Transition t)
{
    if (m_items.size() < m_capacity)
    {
        m_items.push_back(std::move(t));
        return;
    }
    m_items[m_next] = std::move(t);
    m_next = (m_next + 1) % m_capacity;
}

std::vector<const Transition*>
ReplayBuffer::Sample(std::size_t n, RngStream& rng) const
{
    if (n > m_items.size())
    {
        throw std::invalid_argument("ReplayBuffer::Sample: not enough records");
    }
    std::vector<std::size_t> picked;
    picked.reserve(n);
    if (2 * n > m_items.size())
    {
        // Dense request: partial Fisher-Yates.
        std::vector<std::size_t> idx(m_items.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t j = i + rng.UniformInt(idx.size() - i);
            std::swap(idx[i], idx[j]);
            picked.push_back(idx[i]);
        }
    }
    else
    {
        while (picked.size() < n)
        {
            const std::size_t j = rng.UniformInt(m_items.size());
            if (std::find(picked.begin(), picked.end(), j) == picked.end())
            {
                picked.push_back(j);
            }
        }
    }
    std::vector<const Transition*> out;
    out.reserve(n);
    for (auto i : picked)
    {
        out.push_back(&m_items[i]);
    }
    return out;
}

} // namespace ranai
