#include "dcs/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace dcs::log {

Level level() {
    static Level cached = [] {
        const char* env = std::getenv("DCS_LOG");
        if (!env)
            return Level::Off;
        std::string_view v(env);
        if (v == "debug")
            return Level::Debug;
        if (v == "info")
            return Level::Info;
        return Level::Off;
    }();
    return cached;
}

void write(Level lvl, const std::string& message) {
    std::cerr << (lvl == Level::Debug ? "[debug] " : "[info] ") << message << '\n';
}

} // namespace dcs::log
