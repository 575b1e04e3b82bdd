#include "xg/config.hpp"

#include <cstdlib>
#include <string>

namespace xg {

namespace {

Caps caps_from_env() {
    Caps caps;
    if (const char* bits = std::getenv("XORGAMES_CAP_BITS")) {
        try {
            const long v = std::stol(bits);
            if (v > 0) caps.enumeration_bits = static_cast<std::size_t>(v);
        } catch (...) {
            // ignore malformed override, keep default
        }
    }
    return caps;
}

}  // namespace

Caps& global_caps() {
    static Caps caps = caps_from_env();
    return caps;
}

int thread_count() {
    static int count = [] {
        if (const char* t = std::getenv("XORGAMES_THREADS")) {
            try {
                const long v = std::stol(t);
                if (v >= 1 && v <= 256) return static_cast<int>(v);
            } catch (...) {
            }
        }
        return 1;
    }();
    return count;
}

}  // namespace xg
