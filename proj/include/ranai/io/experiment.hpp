#pragma once

#include "ranai/io/summary.hpp"

#include <filesystem>

namespace ranai {

struct RunArtifacts
{
    Summary summary;
    EpisodeResult result;
    std::optional<QNetwork> model; // trained or evaluated network, if any
};

/// One episode on the base seed following the configured policy and agent
/// mode. Writes the artifact bundle when outDir is non-empty.
RunArtifacts Run(const RunConfig& cfg, const std::filesystem::path& outDir);

struct TrainOptions
{
    std::size_t episodes = 50;
    std::filesystem::path outDir; // empty: keep everything in memory
    /// Called after every training episode.
    std::function<void(std::size_t episode, const Summary&)> progress;
};

/// Trains a persistent agent over `episodes` runs (episode k uses the
/// environment seed MixSeed(seed, k + 1)), then evaluates it greedily on the
/// base seed. The evaluation bundle, model.txt, training_log.csv and
/// episodes.csv go to outDir.
RunArtifacts TrainThenEval(const RunConfig& cfg, const TrainOptions& opts);

/// Greedy evaluation of a fixed network on the base seed.
RunArtifacts Evaluate(const RunConfig& cfg, const QNetwork& net, const std::filesystem::path& outDir);

} // namespace ranai
