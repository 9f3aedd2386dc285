#include "inlslab/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace inls {

LogLevel log_level() {
    static LogLevel lvl = [] {
        const char* e = std::getenv("INLS_LAB_LOG");
        if (e && std::strcmp(e, "debug") == 0) return LogLevel::Debug;
        if (e && std::strcmp(e, "info") == 0) return LogLevel::Info;
        return LogLevel::Error;
    }();
    return lvl;
}

void log(LogLevel lvl, const std::string& msg) {
    if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
    const char* tag = lvl == LogLevel::Error ? "error" : lvl == LogLevel::Info ? "info" : "debug";
    std::fprintf(stderr, "[inls-lab %s] %s\n", tag, msg.c_str());
}

}  // namespace inls
