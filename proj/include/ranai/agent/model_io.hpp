#pragma once

#include "ranai/agent/q_network.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace ranai {

class ModelError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Text container, stable across versions of this tool:
///
///   ranai-qnetwork 1
///   shape 8 12 6 3
///   layer 0 12 8
///   <12 rows of 8 weights>
///   <1 row of 12 biases>
///   layer 1 6 12
///   ...
///
/// Values use the shortest decimal form that round-trips exactly, so a
/// load after save reproduces forward outputs bit for bit.
void SaveModel(std::ostream& out, const QNetwork& net);

/// Throws ModelError on bad magic/version, truncation, malformed numbers or
/// (when `expectedShape` is given) a shape mismatch naming both shapes.
QNetwork LoadModel(std::istream& in,
                   const std::optional<std::vector<std::size_t>>& expectedShape = std::nullopt);

void SaveModelFile(const std::string& path, const QNetwork& net);
QNetwork LoadModelFile(const std::string& path,
                       const std::optional<std::vector<std::size_t>>& expectedShape = std::nullopt);

std::string ShapeToString(const std::vector<std::size_t>& shape);

} // namespace ranai
