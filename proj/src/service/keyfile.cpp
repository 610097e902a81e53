#include "zecale/service/keyfile.hpp"

#include <fstream>
#include <stdexcept>

namespace zecale::service
{

using nlohmann::json;

json Envelope::to_json() const
{
    return {{"version", envelope_version}, {"curve", curve}, {"kind", kind}, {"data", "0x" + util::to_hex(data)}};
}

Envelope Envelope::from_json(const json &j)
{
    try {
        if (j.at("version").get<int>() != envelope_version) {
            throw std::invalid_argument("unsupported envelope version");
        }
        const auto hex = j.at("data").get<std::string>();
        if (hex.rfind("0x", 0) != 0) {
            throw std::invalid_argument("envelope data must be 0x-prefixed hex");
        }
        return {j.at("curve").get<std::string>(), j.at("kind").get<std::string>(), util::from_hex(hex.substr(2))};
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed envelope: ") + e.what());
    }
}

void write_envelope(const std::filesystem::path &path, const Envelope &e, bool force)
{
    const auto parent = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    if (!std::filesystem::is_directory(parent)) {
        throw std::runtime_error("output directory does not exist: " + parent.string());
    }
    if (!force && std::filesystem::exists(path)) {
        throw std::runtime_error("refusing to overwrite " + path.string() + " (use --force)");
    }
    std::ofstream out(path, std::ios::trunc);
    out << e.to_json().dump() << '\n';
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

Envelope read_envelope(const std::filesystem::path &path, const std::string &curve, const std::string &kind)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    auto env = Envelope::from_json(j);
    if (env.curve != curve || env.kind != kind) {
        throw std::invalid_argument(path.string() + ": expected " + curve + "/" + kind + ", found " + env.curve + "/" +
                                    env.kind);
    }
    return env;
}

} // namespace zecale::service
