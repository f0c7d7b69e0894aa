#include "mexneedlet/config.hpp"

#include "mexneedlet/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace mexneedlet {
namespace {

int initial_cap()
{
    if (const char* env = std::getenv("MEXNEEDLET_DEGREE_CAP"); env && *env) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < (1L << 24)) return static_cast<int>(v);
    }
    return kDefaultDegreeCap;
}

std::atomic<int>& cap_storage()
{
    static std::atomic<int> cap{initial_cap()};
    return cap;
}

}  // namespace

int degree_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_degree_cap(int cap)
{
    if (cap < 1) throw ConfigError("degree cap must be positive");
    cap_storage().store(cap, std::memory_order_relaxed);
}

void check_degree(int l, const char* what)
{
    if (l > degree_cap()) {
        throw NumericError(std::string(what) + ": degree " + std::to_string(l) +
                           " exceeds degree cap " + std::to_string(degree_cap()));
    }
}

}  // namespace mexneedlet
