#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ranai {

/// Splits one CSV record on commas and trims surrounding whitespace. Quoting
/// is not supported; none of our formats need it.
std::vector<std::string> SplitCsvLine(std::string_view line);

/// Shortest decimal text that parses back to exactly the same double.
std::string FormatDouble(double v);

std::optional<double> ParseDouble(std::string_view s);
std::optional<std::uint64_t> ParseUint(std::string_view s);

/// Reads lines, dropping a trailing '\r'. Returns false at end of input.
bool ReadLine(std::istream& in, std::string& line);

} // namespace ranai
