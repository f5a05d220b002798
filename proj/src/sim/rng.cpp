#include "ranai/sim/rng.hpp"

#include <stdexcept>

namespace ranai {

namespace {

std::uint64_t
SplitMix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t
Fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::mt19937_64
MakeEngine(std::uint64_t seed, const std::string& id)
{
    const std::uint64_t a = SplitMix64(seed);
    const std::uint64_t b = SplitMix64(Fnv1a(id) ^ a);
    std::seed_seq seq{static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

std::uint64_t
MixSeed(std::uint64_t seed, std::uint64_t label)
{
    return SplitMix64(seed ^ SplitMix64(label + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(std::uint64_t seed, std::string streamId)
    : m_seed(seed),
      m_id(std::move(streamId)),
      m_engine(MakeEngine(m_seed, m_id))
{
}

RngStream
RngStream::Derive(const std::string& label) const
{
    return RngStream(m_seed, m_id + "/" + label);
}

std::uint64_t
RngStream::NextU64()
{
    return m_engine();
}

double
RngStream::Uniform()
{
    // 53 random mantissa bits.
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
}

double
RngStream::Uniform(double lo, double hi)
{
    return lo + (hi - lo) * Uniform();
}

std::uint64_t
RngStream::UniformInt(std::uint64_t n)
{
    if (n == 0)
    {
        throw std::invalid_argument("RngStream::UniformInt: empty range");
    }
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(m_engine);
}

double
RngStream::Normal(double mean, double stddev)
{
    return mean + stddev * m_normal(m_engine);
}

bool
RngStream::Bernoulli(double p)
{
    if (p <= 0.0)
    {
        return false;
    }
    return Uniform() < p;
}

} // namespace ranai
