#include "ranai/bridge/line_channel.hpp"

#include <cerrno>
#include <cstring>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace ranai::bridge {

LineChannel::LineChannel(int readFd, int writeFd, bool owns)
    : m_readFd(readFd),
      m_writeFd(writeFd),
      m_owns(owns)
{
}

LineChannel::~LineChannel()
{
    Close();
}

void
LineChannel::Close()
{
    if (m_owns)
    {
        if (m_readFd >= 0)
        {
            ::close(m_readFd);
        }
        if (m_writeFd >= 0 && m_writeFd != m_readFd)
        {
            ::close(m_writeFd);
        }
    }
    m_readFd = -1;
    m_writeFd = -1;
}

void
LineChannel::WriteLine(const std::string& line)
{
    if (m_writeFd < 0)
    {
        throw BridgeError("channel closed");
    }
    std::string data = line;
    data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size())
    {
        // MSG_NOSIGNAL keeps a vanished peer from killing us with SIGPIPE.
        ssize_t n = ::send(m_writeFd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n < 0 && errno == ENOTSOCK)
        {
            n = ::write(m_writeFd, data.data() + off, data.size() - off);
        }
        if (n < 0)
        {
            if (errno == EINTR)
            {
                continue;
            }
            throw BridgeError(std::string("write failed: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

std::optional<std::string>
LineChannel::ReadLine(std::chrono::milliseconds timeout)
{
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + timeout;
    while (true)
    {
        if (auto pos = m_buffer.find('\n'); pos != std::string::npos)
        {
            std::string line = m_buffer.substr(0, pos);
            m_buffer.erase(0, pos + 1);
            return line;
        }
        if (m_readFd < 0)
        {
            throw BridgeError("channel closed");
        }
        int waitMs = -1;
        if (timeout.count() >= 0)
        {
            const auto left =
                std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
            if (left.count() <= 0)
            {
                return std::nullopt;
            }
            waitMs = static_cast<int>(left.count());
        }
        pollfd pfd{m_readFd, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, waitMs);
        if (rc < 0)
        {
            if (errno == EINTR)
            {
                continue;
            }
            throw BridgeError(std::string("poll failed: ") + std::strerror(errno));
        }
        if (rc == 0)
        {
            return std::nullopt;
        }
        char buf[4096];
        const ssize_t n = ::read(m_readFd, buf, sizeof buf);
        if (n < 0)
        {
            if (errno == EINTR || errno == EAGAIN)
            {
                continue;
            }
            throw BridgeError(std::string("read failed: ") + std::strerror(errno));
        }
        if (n == 0)
        {
            throw BridgeError("connection closed by peer");
        }
        m_buffer.append(buf, static_cast<std::size_t>(n));
    }
}

} // namespace ranai::bridge
