#include "ranai/io/figdata.hpp"

#include "ranai/util/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ranai {

namespace fs = std::filesystem;

namespace {

std::ifstream
OpenIn(const fs::path& p)
{
    std::ifstream in(p);
    if (!in)
    {
        throw std::runtime_error("cannot read " + p.string());
    }
    return in;
}

/// Copies the selected columns of a CSV file, prefixed by `key`.
std::size_t
CopyColumns(const fs::path& file,
            const std::vector<std::string>& columns,
            const std::string& key,
            std::ostream& out)
{
    auto in = OpenIn(file);
    std::string line;
    if (!ReadLine(in, line))
    {
        throw std::runtime_error(file.string() + ": missing header");
    }
    const auto header = SplitCsvLine(line);
    std::vector<std::size_t> idx;
    for (const auto& c : columns)
    {
        auto it = std::find(header.begin(), header.end(), c);
        if (it == header.end())
        {
            throw std::runtime_error(file.string() + ": missing column " + c);
        }
        idx.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    std::size_t rows = 0;
    while (ReadLine(in, line))
    {
        if (line.empty())
        {
            continue;
        }
        const auto fields = SplitCsvLine(line);
        if (fields.size() != header.size())
        {
            throw std::runtime_error(file.string() + ": malformed row " + std::to_string(rows + 2));
        }
        out << key;
        for (auto i : idx)
        {
            out << ',' << fields[i];
        }
        out << '\n';
        ++rows;
    }
    return rows;
}

} // namespace

FigureDataCounts
EmitFigureData(const std::vector<fs::path>& runDirs, const fs::path& outDir)
{
    fs::create_directories(outDir);
    std::ofstream delay(outDir / "delay.csv", std::ios::binary);
    std::ofstream prr(outDir / "prr.csv", std::ios::binary);
    if (!delay || !prr)
    {
        throw std::runtime_error("cannot write figure data to " + outDir.string());
    }
    delay << "policy,numUes,mechanism,seed,ue,delayMs\n";
    prr << "policy,numUes,mechanism,seed,ue,t,prr\n";

    FigureDataCounts counts;
    for (const auto& dir : runDirs)
    {
        auto cfgIn = OpenIn(dir / "run_config.json");
        const auto cfg = nlohmann::json::parse(cfgIn);
        const std::string key = cfg.at("policy").get<std::string>() + ',' +
                                std::to_string(cfg.at("scenario").at("num_ues").get<std::size_t>()) +
                                ',' + cfg.at("controller").at("mechanism").get<std::string>() + ',' +
                                std::to_string(cfg.at("seed").get<std::uint64_t>());
        if (fs::exists(dir / "bursts.csv"))
        {
            counts.delayRows += CopyColumns(dir / "bursts.csv", {"ue", "delayMs"}, key, delay);
        }
        counts.prrRows += CopyColumns(dir / "stats.csv", {"ue", "t", "prr"}, key, prr);
    }
    return counts;
}

} // namespace ranai
