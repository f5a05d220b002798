#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ranai {

/// A named pseudo-random stream. Two streams built from the same (seed, id)
/// produce identical draws; streams with different ids are independent, so
/// switching one stochastic feature on or off never perturbs another.
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::string streamId);

    /// Child stream with id "<parent id>/<label>".
    RngStream Derive(const std::string& label) const;

    std::uint64_t NextU64();
    /// Uniform in [0, 1).
    double Uniform();
    double Uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t UniformInt(std::uint64_t n);
    double Normal(double mean, double stddev);
    bool Bernoulli(double p);

    std::uint64_t GetSeed() const { return m_seed; }
    const std::string& GetId() const { return m_id; }

  private:
    std::uint64_t m_seed;
    std::string m_id;
    std::mt19937_64 m_engine;
    std::normal_distribution<double> m_normal;
};

/// Mixes a base seed with an integer label (episode index, seed offsets).
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t label);

} // namespace ranai
