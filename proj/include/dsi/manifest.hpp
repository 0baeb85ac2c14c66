// Run manifest embedded in every CLI output: what was run, with which
// parameters, by which tool version, when, and a digest of the numeric
// payload so that bit-identical reproduction is checkable.
#pragma once

#include <cstdint>
#include <string>

namespace dsi {

struct RunManifest {
    std::string command;
    std::string parameters;  // "key=value" pairs, space-separated
    std::string version;     // tool version string
    std::string timestamp;   // ISO 8601 UTC
    std::string units = "hbar^2/(2m)=1";
    std::uint64_t digest = 0;  // FNV-1a over the formatted numeric payload

    std::string to_json() const;
};

std::uint64_t fnv1a64(const std::string& data);

RunManifest make_manifest(const std::string& command,
                          const std::string& parameters);

}  // namespace dsi
