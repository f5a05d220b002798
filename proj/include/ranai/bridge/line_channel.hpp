#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace ranai::bridge {

class BridgeError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Newline-delimited messages over a pair of file descriptors (a socket,
/// pipes or stdio). Does not own the descriptors unless asked to.
class LineChannel
{
  public:
    LineChannel(int readFd, int writeFd, bool owns = false);
    ~LineChannel();
    LineChannel(const LineChannel&) = delete;
    LineChannel& operator=(const LineChannel&) = delete;

    /// Throws BridgeError when the peer is gone.
    void WriteLine(const std::string& line);

    /// nullopt on timeout; throws BridgeError on end of stream or read error.
    /// A negative timeout waits forever.
    std::optional<std::string> ReadLine(std::chrono::milliseconds timeout);

    void Close();

  private:
    int m_readFd;
    int m_writeFd;
    bool m_owns;
    std::string m_buffer;
};

} // namespace ranai::bridge
