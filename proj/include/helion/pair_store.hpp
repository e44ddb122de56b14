#ifndef HELION_PAIR_STORE_HPP
#define HELION_PAIR_STORE_HPP

#include <filesystem>

#include "json.hpp"

#include "helion/scatter.hpp"

namespace helion {

// On-disk layout of a ScatteringPair: s1.cmx, s2.cmx, a.cmx, b.cmx plus
// meta.json carrying the config echo, sigma_max, the unitary flag and the
// random-generator identifier.

nlohmann::json system_config_to_json(const SystemConfig& config);

// Fail-closed: unknown keys, missing keys, or wrong types throw
// ValidationError so a stored config can never be silently misread.
SystemConfig system_config_from_json(const nlohmann::json& j);

void save_pair(const std::filesystem::path& dir, const ScatteringPair& pair);
ScatteringPair load_pair(const std::filesystem::path& dir);

}  // namespace helion

#endif
