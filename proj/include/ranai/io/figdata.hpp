#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ranai {

struct FigureDataCounts
{
    std::size_t delayRows = 0;
    std::size_t prrRows = 0;
};

/// Long-format distributions for external plotting, keyed by
/// (policy, numUes, mechanism) as recorded in each run's run_config.json:
///   delay.csv  policy,numUes,mechanism,seed,ue,delayMs   (one row per completed burst)
///   prr.csv    policy,numUes,mechanism,seed,ue,t,prr     (one row per window)
FigureDataCounts EmitFigureData(const std::vector<std::filesystem::path>& runDirs,
                                const std::filesystem::path& outDir);

} // namespace ranai
