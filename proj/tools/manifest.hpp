#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmk/error.hpp"

namespace lmk_cli {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit digest of a file's bytes.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    lmk::require(in.good(), lmk::errc::parse, "cannot open " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 14];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a64:") + hex;
}

// Companion document recording everything needed to replay a command
// byte-for-byte: the resolved argument vector (with any derived rng seed
// materialized), input digests, and output paths.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::string> replay_argv;
    std::uint64_t rng_seed = 0;
    std::map<std::string, std::string> inputs;
    std::vector<std::string> outputs;

    void add_input(const std::string& path) { inputs[path] = file_digest(path); }

    void write(const std::string& out_path) const {
        nlohmann::json doc;
        doc["tool"] = "lmk";
        doc["version"] = kToolVersion;
        doc["command"] = command;
        doc["argv"] = argv;
        doc["replay_argv"] = replay_argv;
        doc["rng_seed"] = rng_seed;
        doc["inputs"] = inputs;
        doc["outputs"] = outputs;
        std::ofstream out(out_path, std::ios::binary);
        lmk::require(out.good(), lmk::errc::parse, "cannot write " + out_path);
        out << doc.dump(2) << "\n";
    }
};

}  // namespace lmk_cli
