#pragma once

#include <string>

namespace inls {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level comes from INLS_LAB_LOG (error|info|debug), default error.
LogLevel log_level();
void log(LogLevel lvl, const std::string& msg);

}  // namespace inls
