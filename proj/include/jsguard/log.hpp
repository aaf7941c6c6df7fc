#pragma once

#include <functional>
#include <sstream>
#include <string>

namespace jsguard {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();
bool parse_log_level(const std::string& name, LogLevel& out);

// Redirect log output (tests); nullptr restores stderr.
using LogSink = std::function<void(LogLevel, const std::string&)>;
void set_log_sink(LogSink sink);

void log_line(LogLevel level, const std::string& message);

#define JSG_LOG(level, expr)                                        \
    do {                                                            \
        if (static_cast<int>(level) >=                              \
            static_cast<int>(::jsguard::log_level())) {             \
            std::ostringstream jsg_log_os_;                         \
            jsg_log_os_ << expr;                                    \
            ::jsguard::log_line(level, jsg_log_os_.str());          \
        }                                                           \
    } while (0)

#define JSG_DEBUG(expr) JSG_LOG(::jsguard::LogLevel::Debug, expr)
#define JSG_INFO(expr) JSG_LOG(::jsguard::LogLevel::Info, expr)
#define JSG_WARN(expr) JSG_LOG(::jsguard::LogLevel::Warn, expr)
#define JSG_ERROR(expr) JSG_LOG(::jsguard::LogLevel::Error, expr)

}  // namespace jsguard
