// Run-manifest assembly: FNV-1a payload digest, UTC timestamp (honoring
// SOURCE_DATE_EPOCH so archived outputs can be reproduced byte for byte),
// and JSON serialization.
#include "dsi/manifest.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>

#include <json.hpp>

namespace dsi {

namespace {

constexpr const char* tool_version = "dsi1d 1.0.0";

std::string iso_utc_now() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long forced = std::strtoll(epoch, &end, 10);
        if (end != epoch && *end == '\0')
            t = static_cast<std::time_t>(forced);
    }
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char byte : data) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string RunManifest::to_json() const {
    char digest_hex[17];
    std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                  static_cast<unsigned long long>(digest));
    const nlohmann::json j = {
        {"command", command},   {"parameters", parameters},
        {"version", version},   {"timestamp", timestamp},
        {"units", units},       {"digest", digest_hex},
    };
    return j.dump();
}

RunManifest make_manifest(const std::string& command,
                          const std::string& parameters) {
    RunManifest m;
    m.command = command;
    m.parameters = parameters;
    m.version = tool_version;
    m.timestamp = iso_utc_now();
    return m;
}

}  // namespace dsi
