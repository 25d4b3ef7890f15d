#pragma once

#include <sstream>

namespace dcs::log {

enum class Level { Off = 0, Info = 1, Debug = 2 };

// Level comes from the DCS_LOG environment variable (off|info|debug),
// read once. Messages go to standard error.
Level level();
void write(Level level, const std::string& message);

template <typename... Args> void info(Args&&... args) {
    if (level() >= Level::Info) {
        std::ostringstream os;
        (os << ... << args);
        write(Level::Info, os.str());
    }
}

template <typename... Args> void debug(Args&&... args) {
    if (level() >= Level::Debug) {
        std::ostringstream os;
        (os << ... << args);
        write(Level::Debug, os.str());
    }
}

} // namespace dcs::log
