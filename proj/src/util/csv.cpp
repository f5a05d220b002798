#include "ranai/util/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>

namespace ranai {

namespace {

std::string_view
Trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::vector<std::string>
SplitCsvLine(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        const auto field = line.substr(start, comma == std::string_view::npos ? line.npos
                                                                             : comma - start);
        out.emplace_back(Trim(field));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string
FormatDouble(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double>
ParseDouble(std::string_view s)
{
    s = Trim(s);
    if (s.empty())
    {
        return std::nullopt;
    }
    if (s.front() == '+')
    {
        s.remove_prefix(1);
    }
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    {
        return std::nullopt;
    }
    return v;
}

std::optional<std::uint64_t>
ParseUint(std::string_view s)
{
    s = Trim(s);
    if (s.empty())
    {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    {
        return std::nullopt;
    }
    return v;
}

bool
ReadLine(std::istream& in, std::string& line)
{
    if (!std::getline(in, line))
    {
        return false;
    }
    if (!line.empty() && line.back() == '\r')
    {
        line.pop_back();
    }
    return true;
}

} // namespace ranai
