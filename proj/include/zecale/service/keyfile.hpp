#pragma once

#include "zecale/util/bytes.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace zecale::service
{

inline constexpr int envelope_version = 1;
inline constexpr const char *curve_nested = "bls12-377";
inline constexpr const char *curve_wrapping = "bw6-761";

/// Canonical byte encoding wrapped as {version, curve, kind, data: hex}.
struct Envelope {
    std::string curve;
    std::string kind;
    util::Bytes data;

    nlohmann::json to_json() const;
    /// Throws std::invalid_argument on a wrong version or missing field.
    static Envelope from_json(const nlohmann::json &j);
};

/// Refuses to replace an existing file unless `force`; the parent directory
/// must exist. Throws std::runtime_error on either.
void write_envelope(const std::filesystem::path &path, const Envelope &e, bool force);

/// Reads and checks curve and kind. Throws std::runtime_error if the file
/// cannot be read, std::invalid_argument on a mismatch or bad content.
Envelope read_envelope(const std::filesystem::path &path, const std::string &curve, const std::string &kind);

} // namespace zecale::service
